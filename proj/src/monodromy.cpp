#include "melnikov/monodromy.hpp"

#include <stdexcept>

namespace melnikov {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m;
    m.n = n;
    for (int i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r;
    r.n = x.n;
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            int64_t s = 0;
            for (int k = 0; k < x.n; ++k) s += x.a[i][k] * y.a[k][j];
            r.a[i][j] = s;
        }
    return r;
}

bool operator==(const IntMatrix& x, const IntMatrix& y) {
    if (x.n != y.n) return false;
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j)
            if (x.a[i][j] != y.a[i][j]) return false;
    return true;
}

IntMatrix IntMatrix::pow(int e) const {
    IntMatrix r = identity(n);
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

int64_t IntMatrix::trace() const {
    int64_t s = 0;
    for (int i = 0; i < n; ++i) s += a[i][i];
    return s;
}

int64_t IntMatrix::det() const {
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if (n == 3)
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    throw std::invalid_argument("det: unsupported size");
}

MonodromyData matrices(Fibration f) {
    MonodromyData d;
    d.fibration = f;
    if (f == Fibration::Cubic) {
        d.basis = {"alpha", "delta", "gamma"};
        d.M0.n = d.M1.n = d.Minf.n = 3;
        d.M0.a = {{{-1, 1, 0}, {0, 1, 0}, {0, -1, 1}}};
        d.M1.a = {{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}};
        d.Minf.a = {{{-1, 1, 1}, {0, 0, 1}, {0, -1, 1}}};
        d.fiber_types = {"untabulated", "untabulated", "untabulated"};
    } else {
        d.basis = {"delta", "gamma"};
        d.M0.n = d.M1.n = d.Minf.n = 2;
        d.M0.a = {{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}};
        d.M1.a = {{{1, -1, 0}, {0, 1, 0}, {0, 0, 0}}};
        d.Minf.a = {{{-1, -1, 0}, {1, 0, 0}, {0, 0, 0}}};
        d.fiber_types = {"III", "I1", "IV*"};
    }
    return d;
}

std::vector<IdentityCheck> check_identities(const MonodromyData& d) {
    std::vector<IdentityCheck> out;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        out.push_back({std::move(name), pass, std::move(detail)});
    };
    add("Minf = M1*M0", d.M1 * d.M0 == d.Minf);
    add("Tr(M1) = 2", d.M1.trace() == 2);
    if (d.fibration == Fibration::Cubic) {
        IntMatrix u = d.M1;
        for (int i = 0; i < 3; ++i) u.a[i][i] -= 1;
        add("(M1-Id)^2 = 0", (u * u) == IntMatrix{3, {}}, "Picard-Lefschetz unipotency");
        // l0* alpha = -alpha: first column of M0
        bool neg = d.M0.a[0][0] == -1 && d.M0.a[1][0] == 0 && d.M0.a[2][0] == 0;
        add("l0*(alpha) = -alpha", neg);
    } else {
        add("Tr(M0) = 0", d.M0.trace() == 0);
        add("det(M0) = 1", d.M0.det() == 1);
        add("Tr(Minf) = -1", d.Minf.trace() == -1);
        add("M0^4 = Id", d.M0.pow(4) == IntMatrix::identity(2),
            "eigenvalues are primitive fourth roots of unity");
        IntMatrix sq = d.M0 * d.M0;
        IntMatrix neg_id = IntMatrix::identity(2);
        neg_id.a[0][0] = neg_id.a[1][1] = -1;
        add("M0^2 = -Id", sq == neg_id, "eigenvalues +-i");
        // column convention: l0* delta = gamma, l1* delta = delta
        add("l0*(delta) = gamma", d.M0.a[0][0] == 0 && d.M0.a[1][0] == 1);
        add("l1*(delta) = delta", d.M1.a[0][0] == 1 && d.M1.a[1][0] == 0);
    }
    return out;
}

}  // namespace melnikov
