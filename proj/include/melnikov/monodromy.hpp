// The integer monodromy data of the two elliptic fibrations attached to the
// studied reversible systems. Matrices are data, verified for internal
// consistency in exact integer arithmetic; nothing here is recomputed from
// the topology.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace melnikov {

enum class Fibration { Cubic, Quotient };  // (5.3) and (5.4) maps

struct IntMatrix {
    int n = 0;
    std::array<std::array<int64_t, 3>, 3> a{};  // top-left n x n block used

    static IntMatrix identity(int n);
    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    friend bool operator==(const IntMatrix& x, const IntMatrix& y);
    IntMatrix pow(int e) const;
    int64_t trace() const;
    int64_t det() const;  // n <= 3
};

struct MonodromyData {
    Fibration fibration;
    IntMatrix M0;     // loop around t = 0
    IntMatrix M1;     // loop around t = -1/6
    IntMatrix Minf;   // composite loop, equals M1 * M0
    std::vector<std::string> basis;  // cycle labels, column convention
    std::vector<std::string> fiber_types;  // Kodaira types at 0, -1/6, inf (metadata)
};

MonodromyData matrices(Fibration f);

struct IdentityCheck {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<IdentityCheck> check_identities(const MonodromyData& d);

}  // namespace melnikov
