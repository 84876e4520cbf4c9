// Serial vs OpenMP timing of the data-parallel kernels: moment evaluation
// over a t-grid, the mu-sphere sweep, and the Monte-Carlo region sampler.
#include "melnikov/engine.hpp"
#include "melnikov/parallel.hpp"
#include "melnikov/region2d.hpp"
#include "melnikov/rng.hpp"
#include "melnikov/zero_lab.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

using namespace melnikov;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class F>
double timed(F&& f) {
    double t0 = now_seconds();
    f();
    return now_seconds() - t0;
}

double bench_moment_grid(ExecMode mode) {
    const int n = 256;
    std::vector<double> out(n);
    return timed([&] {
        parallel_for(n, mode, [&](size_t i) {
            double t = -1.0 / 6.0 + (1.0 / 6.0 - 2e-3) * (i + 1) / (n + 1);
            Oval o = make_oval(CaseId::R18, t);
            out[i] = moment(o, MomentKind::J, 1).value;
        });
    });
}

double bench_sweep(ExecMode mode) {
    ZeroLabOptions opt;
    opt.exec = mode;
    opt.grid = 256;
    return timed([&] { sweep_mu(CaseId::R18, std::nullopt, 200, 42, Which::J, opt); });
}

double bench_mc(ExecMode mode) {
    const double t = 0.06;
    RegionExtent ext = lv_region_extent(CaseId::LV1, t);
    const int blocks = 256, per_block = 2000;
    std::vector<double> sums(blocks);
    return timed([&] {
        parallel_for(blocks, mode, [&](size_t bi) {
            Rng rng(1234 ^ bi);
            double s = 0;
            for (int i = 0; i < per_block; ++i) {
                double x = rng.uniform(ext.x_min, ext.x_max);
                double y = rng.uniform(ext.y_min, ext.y_max);
                if (lv_region_contains(CaseId::LV1, t, x, y))
                    s += lv_region_integrand(CaseId::LV1, {1, 0, 0, 0}, x, y);
            }
            sums[bi] = s;
        });
        double total = 0;
        for (double s : sums) total += s;
        (void)total;
    });
}

}  // namespace

int main() {
    struct Row {
        const char* name;
        double serial;
        double parallel;
    };
    std::vector<Row> rows;
    rows.push_back({"moment grid (r18, 256 levels)", bench_moment_grid(ExecMode::Serial),
                    bench_moment_grid(ExecMode::OpenMP)});
    rows.push_back({"mu sweep (r18, n=200)", bench_sweep(ExecMode::Serial),
                    bench_sweep(ExecMode::OpenMP)});
    rows.push_back({"MC region sampler (lv1, 512k)", bench_mc(ExecMode::Serial),
                    bench_mc(ExecMode::OpenMP)});

    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");
    for (const auto& r : rows)
        std::printf("%-34s %10.3f %10.3f %8.2fx\n", r.name, r.serial, r.parallel,
                    r.serial / r.parallel);
    return 0;
}
