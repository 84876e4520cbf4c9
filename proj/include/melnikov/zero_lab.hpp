// Zero counting of generating functions on the annulus, seeded mu-sphere
// sweeps against the two-zero bound, and asymptotic exponent fits near the
// annulus boundary.
#pragma once

#include "melnikov/engine.hpp"
#include "melnikov/parallel.hpp"

#include <cstdint>
#include <map>

namespace melnikov {

struct MuVector {
    std::array<double, 4> w{0, 0, 0, 0};
    int size = 3;

    // canonical representative: unit norm, first nonzero coordinate positive
    void canonicalize();
    double norm() const;
};

enum class Which { I, J };

struct ZeroRecord {
    double bracket_lo = 0;
    double bracket_hi = 0;
    double root = 0;
    bool suspected_multiple = false;
    double value_at_root = 0;
};

struct ZeroReport {
    CaseId id{};
    MuVector mu;
    Which which = Which::J;
    double scan_lo = 0, scan_hi = 0;
    int grid = 0;
    std::vector<ZeroRecord> zeros;
    int count_with_multiplicity = 0;
    bool forced_center_zero = false;  // I vanishes at the center level
    double scale = 0;                 // max |value| over the grid
    double min_gap_value = 0;         // min |value| between recorded roots
    int skipped_nodes = 0;
};

struct ZeroLabOptions {
    int grid = 512;
    double refine_tol = 1e-12;
    double suspect_factor = 1e-9;   // |J| < factor * scale without sign change
    double grid_margin = 2e-6;      // distance of extreme grid nodes to endpoints
    EngineOptions engine{};
    ExecMode exec = ExecMode::OpenMP;
};

ZeroReport count_zeros(CaseId c, const std::optional<Rational>& b, const MuVector& mu,
                       Which which, const ZeroLabOptions& opt = {});

struct SweepSummary {
    CaseId id{};
    Which which = Which::J;
    int n = 0;
    uint64_t seed = 0;
    int max_count = 0;
    MuVector argmax;
    std::map<int, int> histogram;
    std::vector<int> counts;            // per sample, in sample order
    std::vector<MuVector> samples;
    bool witness_found = false;         // some mu with exactly two simple zeros
    MuVector witness;
    bool open_flag_no_witness = false;  // bound holds but no 2-zero sample seen
};

SweepSummary sweep_mu(CaseId c, const std::optional<Rational>& b, int n, uint64_t seed,
                      Which which = Which::J, const ZeroLabOptions& opt = {});

// J extrapolated to the center level (three-step Richardson; J is analytic there)
double center_value_extrapolated(CaseId c, const std::optional<Rational>& b, const MuVector& mu,
                                 Which which, const ZeroLabOptions& opt = {});

struct SlopeFit {
    CaseId id{};
    int k = 0;
    double abs_t_lo = 0, abs_t_hi = 0;
    int points = 0;
    double fitted_exponent = 0;
    std::optional<double> predicted_exponent;
    double fit_residual = 0;       // rms residual of the log-log fit
    double limit_estimate = 0;     // value at the smallest |t| (k-bounded cases)
};

// least-squares slope of log|J_k| vs log|t| on a geometric grid approaching
// the boundary level t -> 0
SlopeFit slope_fit(CaseId c, const std::optional<Rational>& b, int k, double abs_t_lo = 1e-5,
                   double abs_t_hi = 1e-2, int points = 25, const ZeroLabOptions& opt = {});

// J_0 / log-law study: ratio J_0(t)/log(1/|t|) on a geometric grid; drift is
// the relative change of the ratio across the last decade
struct RatioStudy {
    std::vector<std::pair<double, double>> samples;  // (|t|, ratio)
    double last_decade_drift = 0;
};
RatioStudy log_ratio_study(CaseId c, const std::optional<Rational>& b, double abs_t_lo = 1e-6,
                           double abs_t_hi = 1e-2, int points = 25,
                           const ZeroLabOptions& opt = {});

}  // namespace melnikov
