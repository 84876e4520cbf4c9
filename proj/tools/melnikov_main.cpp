// melnikov - classification, Abelian-integral evaluation and verification
// pipelines for quadratic centers of genus one.
#include "melnikov/classifier.hpp"
#include "melnikov/engine.hpp"
#include "melnikov/monodromy.hpp"
#include "melnikov/ode.hpp"
#include "melnikov/picard_fuchs.hpp"
#include "melnikov/region2d.hpp"
#include "melnikov/report.hpp"
#include "melnikov/zero_lab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace melnikov;

namespace {

struct GlobalArgs {
    std::string out_path;
    std::string format = "json";
    std::string config_path;
    std::vector<std::string> tol_flags;
    uint64_t seed = 0;
    bool serial = false;
};

Config effective_config(const GlobalArgs& g) {
    Config cfg;
    // defaults
    cfg.set("quad.abs_tol", "1e-10");
    cfg.set("quad.rel_tol", "1e-12");
    cfg.set("engine.endpoint_margin", "1e-6");
    cfg.set("zeros.grid", "512");
    cfg.set("zeros.refine_tol", "1e-12");
    cfg.set("classify.tol", "0");
    if (!g.config_path.empty()) {
        Config file = parse_config_file(g.config_path);
        for (auto& [k, v] : file.kv) cfg.set(k, v);
    }
    for (const auto& spec : g.tol_flags) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--tol expects name=value, got '" + spec + "'");
        cfg.set(spec.substr(0, eq), spec.substr(eq + 1));
    }
    cfg.set("exec.mode", g.serial ? "serial" : "openmp");
    cfg.set("seed", std::to_string(g.seed));
    return cfg;
}

EngineOptions engine_options(const Config& cfg) {
    EngineOptions opt;
    opt.quad.abs_tol = cfg.get_double("quad.abs_tol", 1e-10);
    opt.quad.rel_tol = cfg.get_double("quad.rel_tol", 1e-12);
    opt.endpoint_margin = cfg.get_double("engine.endpoint_margin", 1e-6);
    return opt;
}

ZeroLabOptions zero_options(const Config& cfg) {
    ZeroLabOptions opt;
    opt.grid = cfg.get_int("zeros.grid", 512);
    opt.refine_tol = cfg.get_double("zeros.refine_tol", 1e-12);
    opt.engine = engine_options(cfg);
    opt.exec = cfg.get("exec.mode") == std::optional<std::string>("serial") ? ExecMode::Serial
                                                                            : ExecMode::OpenMP;
    return opt;
}

json report_header(const std::string& command, const Config& cfg) {
    json j;
    j["tool"] = "melnikov";
    j["version"] = kToolVersion;
    j["command"] = command;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(cfg.hash()));
    j["config_hash"] = buf;
    j["seed"] = cfg.get_int("seed", 0);
    return j;
}

void emit(const GlobalArgs& g, const json& j, const std::string& csv = "") {
    std::string payload = (g.format == "csv" && !csv.empty()) ? csv : j.dump(2) + "\n";
    if (g.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(g.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + g.out_path);
        out << payload;
    }
}

std::array<double, 4> parse_mu(const std::string& s) {
    std::array<double, 4> mu{0, 0, 0, 0};
    std::stringstream ss(s);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 4) throw std::runtime_error("--mu takes at most four weights");
        mu[i++] = std::stod(item);
    }
    if (i == 0) throw std::runtime_error("--mu is empty");
    return mu;
}

int mu_size(const std::string& s) {
    return 1 + static_cast<int>(std::count(s.begin(), s.end(), ','));
}

json mu_json(const MuVector& mu) {
    json a = json::array();
    for (int i = 0; i < mu.size; ++i) a.push_back(mu.w[i]);
    return a;
}

json zero_report_json(const ZeroReport& rep) {
    json j;
    j["case"] = to_string(rep.id);
    j["which"] = rep.which == Which::I ? "I" : "J";
    j["mu"] = mu_json(rep.mu);
    j["scan_lo"] = rep.scan_lo;
    j["scan_hi"] = rep.scan_hi;
    j["grid"] = rep.grid;
    j["count_with_multiplicity"] = rep.count_with_multiplicity;
    j["forced_center_zero"] = rep.forced_center_zero;
    j["scale"] = rep.scale;
    j["min_gap_value"] = rep.min_gap_value;
    j["skipped_nodes"] = rep.skipped_nodes;
    json zs = json::array();
    for (const auto& z : rep.zeros) {
        json zj;
        zj["bracket_lo"] = z.bracket_lo;
        zj["bracket_hi"] = z.bracket_hi;
        zj["root"] = z.root;
        zj["suspected_multiple"] = z.suspected_multiple;
        zj["value_at_root"] = z.value_at_root;
        zs.push_back(zj);
    }
    j["zeros"] = zs;
    return j;
}

// per-command state shared through CLI11 callbacks
struct Invocation {
    GlobalArgs g;
    std::vector<std::string> failures;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic centers of genus one: classification and Melnikov pipelines"};
    app.require_subcommand(1);

    Invocation inv;
    app.add_option("--out", inv.g.out_path, "output file (default stdout)");
    app.add_option("--format", inv.g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", inv.g.config_path, "key=value config file");
    app.add_option("--tol", inv.g.tol_flags, "tolerance override name=value (repeatable)");
    app.add_option("--seed", inv.g.seed, "seed recorded in reports");
    app.add_flag("--serial", inv.g.serial, "disable the OpenMP worker pool");

    // classify
    std::string arg_a, arg_b, arg_A, arg_B;
    bool arg_lv = false;
    auto* c_classify = app.add_subcommand("classify", "classify a center by exact parameters");
    c_classify->add_option("--a", arg_a, "rational a (reversible)");
    c_classify->add_option("--b", arg_b, "rational b (reversible)");
    c_classify->add_flag("--lv", arg_lv, "classify a Lotka-Volterra system");
    c_classify->add_option("--A", arg_A, "complex rational A, e.g. 1-2i");
    c_classify->add_option("--B", arg_B, "complex rational B");

    // integrate
    std::string arg_case, arg_mu = "1,0,0", arg_bparam, arg_moment;
    double arg_t = 0, arg_c4b = 0;
    int arg_k = 0;
    auto* c_int = app.add_subcommand("integrate", "evaluate a generating function or moment");
    c_int->add_option("--case", arg_case, "case id, e.g. r18")->required();
    c_int->add_option("--t", arg_t, "level inside the annulus")->required();
    c_int->add_option("--mu", arg_mu, "perturbation weights m1,m2,m3[,m4]");
    c_int->add_option("--b", arg_bparam, "case parameter b (rational)");
    c_int->add_option("--c4b", arg_c4b, "codimension-four parameter b in (-2,2)");
    c_int->add_option("--moment", arg_moment, "evaluate a single moment: I|J|L|LJ");
    c_int->add_option("--k", arg_k, "moment index k");

    // pf-check
    int arg_kmin = -3, arg_kmax = 6, arg_tpoints = 10;
    auto* c_pf = app.add_subcommand("pf-check", "verify the moment recurrence and (3.4) relations");
    c_pf->add_option("--case", arg_case, "case id")->required();
    c_pf->add_option("--b", arg_bparam, "case parameter b");
    c_pf->add_option("--kmin", arg_kmin, "lowest k");
    c_pf->add_option("--kmax", arg_kmax, "highest k");
    c_pf->add_option("--tpoints", arg_tpoints, "interior t grid size");

    // zeros
    std::string arg_which = "J";
    auto* c_zeros = app.add_subcommand("zeros", "count zeros of a generating function");
    c_zeros->add_option("--case", arg_case, "case id")->required();
    c_zeros->add_option("--b", arg_bparam, "case parameter b");
    c_zeros->add_option("--mu", arg_mu, "weights")->required();
    c_zeros->add_option("--which", arg_which, "I or J")->check(CLI::IsMember({"I", "J"}));
    int arg_grid = 512;
    c_zeros->add_option("--grid", arg_grid, "scan grid size (>= 256)");

    // sweep
    int arg_n = 2000;
    auto* c_sweep = app.add_subcommand("sweep", "seeded mu-sphere sweep of zero counts");
    c_sweep->add_option("--case", arg_case, "case id")->required();
    c_sweep->add_option("--b", arg_bparam, "case parameter b");
    c_sweep->add_option("--n", arg_n, "number of sphere samples (>= 100)");
    c_sweep->add_option("--which", arg_which, "I or J")->check(CLI::IsMember({"I", "J"}));

    // asympt
    auto* c_asympt = app.add_subcommand("asympt", "boundary asymptotics: slope fits / log ratio");
    c_asympt->add_option("--case", arg_case, "case id (r18 or r11)")->required();

    // monodromy
    auto* c_mono = app.add_subcommand("monodromy", "verify the integer monodromy identities");

    // crosscheck
    double arg_eps = 1e-3;
    auto* c_cross = app.add_subcommand("crosscheck", "ODE displacement vs generating integral (r18)");
    c_cross->add_option("--mu", arg_mu, "weights")->required();
    c_cross->add_option("--epsilon", arg_eps, "perturbation size");

    CLI11_PARSE(app, argc, argv);

    Config cfg = effective_config(inv.g);
    EngineOptions eopt = engine_options(cfg);
    ZeroLabOptions zopt = zero_options(cfg);
    set_default_exec_mode(inv.g.serial ? ExecMode::Serial : ExecMode::OpenMP);

    try {
        if (c_classify->parsed()) {
            json j = report_header("classify", cfg);
            Rational tol = parse_rational(cfg.get("classify.tol").value_or("0"));
            if (arg_lv) {
                LVParams p{parse_gaussian(arg_A), parse_gaussian(arg_B)};
                LVCase r = classify_lv(p, to_double(tol));
                j["input"] = {{"A", melnikov::to_string(p.A)}, {"B", melnikov::to_string(p.B)}};
                j["label"] = to_string(r.label);
                if (r.branch) j["branch"] = r.branch > 0 ? "+" : "-";
                j["matched_condition"] = r.matched_condition;
                j["residual"] = r.residual;
                if (r.reversible_b) j["reversible_b"] = melnikov::to_string(*r.reversible_b);
            } else {
                ReversibleParams p{parse_rational(arg_a), parse_rational(arg_b)};
                ReversibleCase r = classify_reversible(p, tol);
                j["input"] = {{"a", melnikov::to_string(p.a)}, {"b", melnikov::to_string(p.b)}};
                j["label"] = to_string(r.label);
                j["matched_condition"] = r.matched_condition;
                j["residual"] = r.residual;
                if (r.line) j["line"] = *r.line;
            }
            emit(inv.g, j);
        } else if (c_int->parsed()) {
            json j = report_header("integrate", cfg);
            CaseId id = parse_case(arg_case);
            std::optional<Rational> b;
            if (!arg_bparam.empty()) b = parse_rational(arg_bparam);
            auto mu = parse_mu(arg_mu);
            j["case"] = arg_case;
            j["t"] = arg_t;
            ValueErr v;
            if (!arg_moment.empty()) {
                MomentKind kind = arg_moment == "I"    ? MomentKind::I
                                  : arg_moment == "J"  ? MomentKind::J
                                  : arg_moment == "L"  ? MomentKind::Log
                                                       : MomentKind::LogJ;
                Oval o = make_oval(id, arg_t, b, eopt);
                v = moment(o, kind, arg_k, eopt.quad);
                j["moment"] = arg_moment;
                j["k"] = arg_k;
            } else if (id == CaseId::C4) {
                C4Spec spec{arg_c4b, mu};
                v = c4_generating_I(spec, arg_t);
                j["c4b"] = arg_c4b;
            } else if (is_region_case(id)) {
                v = lv_generating_I(id, arg_t, mu);
            } else {
                if (mu_size(arg_mu) > mu_count(id, b))
                    throw CapabilityError("mu4 is accepted only for r5 (b=2) and r10");
                v = generating_I(GeneratingSpec{id, b, mu}, arg_t, eopt);
            }
            j["value"] = v.value;
            j["est_error"] = v.est_error;
            std::string csv = "t,value,est_error\n" + std::to_string(arg_t) + "," +
                              std::to_string(v.value) + "," + std::to_string(v.est_error) + "\n";
            emit(inv.g, j, csv);
        } else if (c_pf->parsed()) {
            json j = report_header("pf-check", cfg);
            CaseId id = parse_case(arg_case);
            std::optional<Rational> b;
            if (!arg_bparam.empty()) b = parse_rational(arg_bparam);
            AnnulusInterval ai = annulus_interval(id, b);
            double lo = ai.lo, hi = std::isinf(ai.hi) ? ai.lo + 2.0 : ai.hi;
            j["case"] = arg_case;
            j["pf_dimension"] = pf_dimension(id, b);
            double worst_rec = 0, worst_der = 0;
            json rows = json::array();
            for (int k = arg_kmin; k <= arg_kmax; ++k) {
                for (int i = 1; i <= arg_tpoints; ++i) {
                    double t = lo + (hi - lo) * i / (arg_tpoints + 1);
                    double res = relation_residual(id, b, k, t, eopt);
                    worst_rec = std::max(worst_rec, res);
                    json row;
                    row["k"] = k;
                    row["t"] = t;
                    row["recurrence_residual"] = res;
                    rows.push_back(row);
                }
                double tmid = 0.5 * (lo + hi);
                DerivativeResiduals dr = derivative_relations(id, b, tmid, k, eopt);
                worst_der = std::max({worst_der, dr.d_dt, dr.d_dx, dr.on_curve});
            }
            j["rows"] = rows;
            j["worst_recurrence_residual"] = worst_rec;
            j["worst_derivative_residual"] = worst_der;
            if (worst_rec > 1e-9) inv.failures.push_back("recurrence residual above 1e-9");
            if (worst_der > 1e-8) inv.failures.push_back("derivative relation residual above 1e-8");
            emit(inv.g, j);
        } else if (c_zeros->parsed()) {
            json j = report_header("zeros", cfg);
            CaseId id = parse_case(arg_case);
            std::optional<Rational> b;
            if (!arg_bparam.empty()) b = parse_rational(arg_bparam);
            MuVector mu;
            mu.w = parse_mu(arg_mu);
            mu.size = mu_size(arg_mu);
            zopt.grid = arg_grid;
            ZeroReport rep =
                count_zeros(id, b, mu, arg_which == "I" ? Which::I : Which::J, zopt);
            j.update(zero_report_json(rep));
            std::string csv = "root,value,suspected_multiple\n";
            for (const auto& z : rep.zeros)
                csv += std::to_string(z.root) + "," + std::to_string(z.value_at_root) + "," +
                       (z.suspected_multiple ? "1" : "0") + "\n";
            emit(inv.g, j, csv);
        } else if (c_sweep->parsed()) {
            json j = report_header("sweep", cfg);
            CaseId id = parse_case(arg_case);
            std::optional<Rational> b;
            if (!arg_bparam.empty()) b = parse_rational(arg_bparam);
            SweepSummary s = sweep_mu(id, b, arg_n, inv.g.seed,
                                      arg_which == "I" ? Which::I : Which::J, zopt);
            j["case"] = arg_case;
            j["which"] = arg_which;
            j["n"] = s.n;
            j["max_count"] = s.max_count;
            j["argmax_mu"] = mu_json(s.argmax);
            json hist = json::object();
            for (auto& [count, freq] : s.histogram) hist[std::to_string(count)] = freq;
            j["histogram"] = hist;
            j["witness_found"] = s.witness_found;
            if (s.witness_found) j["witness_mu"] = mu_json(s.witness);
            j["open_flag_no_witness"] = s.open_flag_no_witness;
            std::string csv = "count,frequency\n";
            for (auto& [count, freq] : s.histogram)
                csv += std::to_string(count) + "," + std::to_string(freq) + "\n";
            emit(inv.g, j, csv);
        } else if (c_asympt->parsed()) {
            json j = report_header("asympt", cfg);
            CaseId id = parse_case(arg_case);
            j["case"] = arg_case;
            json fits = json::array();
            std::vector<int> ks = (id == CaseId::R11) ? std::vector<int>{1, 2, 3}
                                                      : std::vector<int>{-1, 1};
            for (int k : ks) {
                SlopeFit f = slope_fit(id, std::nullopt, k, 1e-5, 1e-2, 25, zopt);
                json fj;
                fj["k"] = k;
                fj["fitted_exponent"] = f.fitted_exponent;
                if (f.predicted_exponent) fj["predicted_exponent"] = *f.predicted_exponent;
                fj["fit_residual"] = f.fit_residual;
                fj["limit_estimate"] = f.limit_estimate;
                fits.push_back(fj);
            }
            j["slope_fits"] = fits;
            if (id != CaseId::R11) {
                RatioStudy rs = log_ratio_study(id, std::nullopt, 1e-6, 1e-2, 25, zopt);
                j["log_ratio_last_decade_drift"] = rs.last_decade_drift;
            }
            emit(inv.g, j);
        } else if (c_mono->parsed()) {
            json j = report_header("monodromy", cfg);
            json fib = json::array();
            for (Fibration f : {Fibration::Cubic, Fibration::Quotient}) {
                MonodromyData d = matrices(f);
                json fj;
                fj["fibration"] = f == Fibration::Cubic ? "cubic_map_5_3" : "quotient_map_5_4";
                fj["basis"] = d.basis;
                fj["fiber_types"] = d.fiber_types;
                json checks = json::array();
                for (const auto& c : check_identities(d)) {
                    json cj;
                    cj["name"] = c.name;
                    cj["pass"] = c.pass;
                    if (!c.detail.empty()) cj["detail"] = c.detail;
                    checks.push_back(cj);
                    if (!c.pass) inv.failures.push_back("monodromy identity failed: " + c.name);
                }
                fj["checks"] = checks;
                fib.push_back(fj);
            }
            j["fibrations"] = fib;
            emit(inv.g, j);
        } else if (c_cross->parsed()) {
            json j = report_header("crosscheck", cfg);
            MuVector mu;
            mu.w = parse_mu(arg_mu);
            mu.size = mu_size(arg_mu);
            OdeOptions oopt;
            int sigma = calibrate_sign(mu, arg_eps, oopt);
            GeneratingSpec spec{CaseId::R18, std::nullopt, mu.w};
            json rows = json::array();
            std::string csv = "t,displacement,displacement_over_eps,I\n";
            PerturbedField f{mu, arg_eps};
            for (int i = 1; i <= 10; ++i) {
                double t = -1.0 / 6.0 + (1.0 / 6.0) * i / 11.0;
                double d = displacement(f, t, oopt);
                double iv = generating_I(spec, t, eopt).value;
                json row;
                row["t"] = t;
                row["displacement"] = d;
                row["displacement_over_eps"] = d / arg_eps;
                row["I"] = iv;
                rows.push_back(row);
                csv += std::to_string(t) + "," + std::to_string(d) + "," +
                       std::to_string(d / arg_eps) + "," + std::to_string(iv) + "\n";
            }
            j["sigma"] = sigma;
            j["rows"] = rows;
            auto cycles = locate_limit_cycles(mu, arg_eps, oopt, zopt);
            json cj = json::array();
            for (const auto& c : cycles) {
                json e;
                e["t_star"] = c.t_star;
                e["stability"] = c.attracting ? "attracting" : "repelling";
                e["residual"] = c.residual;
                e["nearest_integral_zero"] = c.nearest_integral_zero;
                e["mismatch"] = c.mismatch;
                cj.push_back(e);
            }
            j["limit_cycles"] = cj;
            emit(inv.g, j, csv);
        }
    } catch (const AmbiguousClassification& e) {
        json j;
        j["failures"] = json::array({e.what()});
        j["candidates"] = e.candidates;
        std::cerr << j.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json j;
        j["failures"] = json::array({e.what()});
        std::cerr << j.dump(2) << "\n";
        return 1;
    }

    if (!inv.failures.empty()) {
        json j;
        j["failures"] = inv.failures;
        std::cerr << j.dump(2) << "\n";
        return 1;
    }
    return 0;
}
