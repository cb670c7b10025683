#include "zerolab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "zerolab/correlations.hpp"
#include "zerolab/equidist.hpp"
#include "zerolab/evaluator.hpp"
#include "zerolab/zeros.hpp"

namespace zerolab {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Deterministic index-parallel map: results land in submission order.
void parallel_for(long long n, int threads,
                  const std::function<void(long long)>& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n <= 1) {
        for (long long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex err_mtx;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                long long i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mtx);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// --------------------------------------------------------------------------
// Schema helpers.  Validation collects "field: problem" strings; builders
// assume a validated document.
// --------------------------------------------------------------------------

const char* kExperimentNames[] = {
    "zero_count_sweep", "sector_equidist", "local_disks",
    "correlation_suite", "spectral_suite", "weyl_scan",
    "condition_check",  "transport_check", "lattice_baseline"};

bool known_experiment(const std::string& name) {
    for (const char* k : kExperimentNames)
        if (name == k) return true;
    return false;
}

void validate_weight(const json& j, const std::string& where,
                     std::vector<std::string>& errs) {
    if (!j.is_object()) {
        errs.push_back(where + ": must be an object");
        return;
    }
    std::string fam = j.value("family", "");
    if (fam == "log") {
        if (!j.contains("alpha") || !j["alpha"].is_number() ||
            j["alpha"].get<double>() <= 0.0)
            errs.push_back(where + ".alpha: positive number required");
    } else if (fam == "power") {
        double beta = j.value("beta", -1.0);
        if (!(beta > 0.0 && beta < 1.0))
            errs.push_back(where + ".beta: must lie in (0, 1)");
        if (!(j.value("c", -1.0) > 0.0))
            errs.push_back(where + ".c: positive number required");
    } else if (fam == "tabulated") {
        if (!j.contains("t") || !j.contains("phi") || !j["t"].is_array() ||
            !j["phi"].is_array() || j["t"].size() != j["phi"].size() ||
            j["t"].size() < 2)
            errs.push_back(where + ": matching arrays t, phi of size >= 2 required");
    } else {
        errs.push_back(where + ".family: one of log, power, tabulated");
    }
}

SmoothWeight build_weight(const json& j) {
    std::string fam = j.value("family", "");
    if (fam == "log") return SmoothWeight(LogFamily{j["alpha"].get<double>()});
    if (fam == "power")
        return SmoothWeight(PowerFamily{j["beta"].get<double>(), j["c"].get<double>()});
    TabulatedFamily tf;
    tf.t = j["t"].get<std::vector<double>>();
    tf.phi = j["phi"].get<std::vector<double>>();
    return SmoothWeight(std::move(tf));
}

void validate_sequence(const json& j, const std::string& where,
                       std::vector<std::string>& errs) {
    if (!j.is_object()) {
        errs.push_back(where + ": must be an object");
        return;
    }
    std::string kind = j.value("kind", "");
    try {
        (void)multiplier_kind_from_name(kind);
    } catch (const validation_error&) {
        errs.push_back(where + ".kind: unknown multiplier kind '" + kind + "'");
        return;
    }
    if (kind == "quadratic" && !j.contains("alpha"))
        errs.push_back(where + ".alpha: required for the quadratic kind");
    if (j.contains("base")) {
        std::string b = j["base"].get<std::string>();
        if (b != "rademacher" && b != "steinhaus")
            errs.push_back(where + ".base: rademacher or steinhaus");
    }
}

MultiplierSpec build_sequence(const json& j) {
    MultiplierSpec ms;
    ms.kind = multiplier_kind_from_name(j.value("kind", "constant"));
    ms.alpha = j.value("alpha", 0.0);
    ms.base = j.value("base", std::string("rademacher")) == "steinhaus"
                  ? BaseDist::steinhaus
                  : BaseDist::rademacher;
    return ms;
}

void validate_gauge(const json& j, const std::string& where,
                    std::vector<std::string>& errs) {
    if (!j.is_object()) {
        errs.push_back(where + ": must be an object");
        return;
    }
    std::string kind = j.value("kind", "");
    if (kind == "power") {
        double c = j.value("c", -1.0);
        if (!(c > 0.0 && c < 0.5))
            errs.push_back(where + ".c: must lie in (0, 1/2)");
    } else if (kind == "diophantine") {
        if (!(j.value("a", -1.0) >= 0.0))
            errs.push_back(where + ".a: must be >= 0");
    } else if (kind == "exp_sqrt") {
        if (!(j.value("c", -1.0) > 0.0))
            errs.push_back(where + ".c: must be positive");
    } else if (kind == "constant") {
        if (!(j.value("rho0", -1.0) > 0.0))
            errs.push_back(where + ".rho0: must be positive");
    } else if (kind != "sqrt_log") {
        errs.push_back(where +
                       ".kind: one of sqrt_log, power, diophantine, exp_sqrt, constant");
    }
}

RadialGauge build_gauge(const json& j, const SmoothWeight& w) {
    std::string kind = j.value("kind", "sqrt_log");
    if (kind == "power") return RadialGauge::power(w, j["c"].get<double>());
    if (kind == "diophantine") return RadialGauge::diophantine(w, j["a"].get<double>());
    if (kind == "exp_sqrt") return RadialGauge::exp_sqrt(w, j["c"].get<double>());
    if (kind == "constant") return RadialGauge::constant(j["rho0"].get<double>());
    return RadialGauge::sqrt_log(w);
}

struct ExperimentCtx {
    const json& cfg;
    std::string name;
    std::string out_dir;
    std::string config_hash;
    std::string constants_hash;
    std::uint64_t seed;
    int threads;
    const FrozenConstants& constants;
    std::vector<std::string>* outputs;
    json* metrics;
};

std::ofstream open_csv(const ExperimentCtx& ctx, const std::string& stem) {
    std::string path = ctx.out_dir + "/" + stem + ".csv";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw validation_error("cannot open output file " + path);
    os << "# " << kVersionString << " config_hash=" << ctx.config_hash
       << " constants_hash=" << ctx.constants_hash << " seed=" << ctx.seed
       << "\n";
    ctx.outputs->push_back(path);
    return os;
}

// --------------------------------------------------------------------------
// Experiments.
// --------------------------------------------------------------------------

void run_zero_count_sweep(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    SmoothWeight w = build_weight(ctx.cfg["weight"]);
    MultiplierSpec ms = build_sequence(ctx.cfg["sequence"]);
    long long max_index = p.value("max_index", 1024);
    SeriesSpec spec(w, ms, ctx.seed, max_index, p.value("A", 6.0));
    std::vector<double> rs = p["R_list"].get<std::vector<double>>();
    std::vector<ZeroCountReport> reps(rs.size());
    parallel_for(static_cast<long long>(rs.size()), ctx.threads, [&](long long i) {
        reps[static_cast<std::size_t>(i)] = count_region(
            spec, {CircleContour{0.0, rs[static_cast<std::size_t>(i)]}, 256});
    });
    std::ofstream os = open_csv(ctx, ctx.name);
    os << "R,count,nu,excess\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        double nu = w.nu(rs[i]);
        double excess = static_cast<double>(reps[i].count) - nu;
        worst = std::max(worst, std::abs(excess) / nu);
        os << fmt(rs[i]) << "," << reps[i].count << "," << fmt(nu) << ","
           << fmt(excess) << "\n";
    }
    (*ctx.metrics)["max_relative_excess"] = worst;
}

void run_sector_equidist(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    SmoothWeight w = build_weight(ctx.cfg["weight"]);
    MultiplierSpec ms = build_sequence(ctx.cfg["sequence"]);
    SeriesSpec spec(w, ms, ctx.seed, p.value("max_index", 2048));
    double r1 = p["r1"].get<double>(), r2 = p["r2"].get<double>();
    int sectors = p.value("sectors", 8);
    std::vector<ZeroCountReport> rows(static_cast<std::size_t>(sectors));
    parallel_for(sectors, ctx.threads, [&](long long k) {
        double t1 = static_cast<double>(k) / sectors;
        double t2 = static_cast<double>(k + 1) / sectors;
        rows[static_cast<std::size_t>(k)] =
            count_region(spec, {SectorContour{r1, r2, t1, t2}, 256});
    });
    RadialGauge g = build_gauge(p.value("gauge", json{{"kind", "sqrt_log"}}), w);
    DiscrepancyReport rep = equidist_report(rows, g, w, p.value("tau", 2.0),
                                            p.value("C", 1.0));
    std::ofstream os = open_csv(ctx, ctx.name);
    write_report_csv(rep, os);
    (*ctx.metrics)["min_C"] = rep.min_C;
    (*ctx.metrics)["all_pass"] = rep.all_pass;
}

void run_local_disks(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    SmoothWeight w = build_weight(ctx.cfg["weight"]);
    MultiplierSpec ms = build_sequence(ctx.cfg["sequence"]);
    SeriesSpec spec(w, ms, ctx.seed, p.value("max_index", 2048));
    RadialGauge g = build_gauge(p.value("gauge", json{{"kind", "sqrt_log"}}), w);
    int n = p.value("disks", 40);
    double r_lo = p.value("r_lo", 15.0), r_hi = p.value("r_hi", 25.0);
    double factor = p.value("radius_factor", 3.0);
    std::vector<ZeroCountReport> rows(static_cast<std::size_t>(n));
    parallel_for(n, ctx.threads, [&](long long i) {
        std::uint64_t h = hash64(ctx.seed ^ 0xd15c5ull, static_cast<std::uint64_t>(i));
        double cr = r_lo + (r_hi - r_lo) * u01(h);
        double ct = u01(hash64(h, 1));
        cplx center = cr * unit_phase(ct);
        double rad = factor * g.rho(cr);
        rows[static_cast<std::size_t>(i)] =
            count_region(spec, {CircleContour{center, rad}, 256});
    });
    double tau = p.value("tau", ctx.constants.gef_local_tau);
    double C = p.value("C", ctx.constants.gef_local_C);
    DiscrepancyReport rep = equidist_report(rows, g, w, tau, C);
    std::ofstream os = open_csv(ctx, ctx.name);
    write_report_csv(rep, os);
    int passes = 0;
    for (const auto& r : rep.rows) passes += r.pass ? 1 : 0;
    (*ctx.metrics)["passes"] = passes;
    (*ctx.metrics)["rows"] = n;
    (*ctx.metrics)["min_C"] = rep.min_C;
}

void run_correlation_suite(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    MultiplierSpec ms = build_sequence(ctx.cfg["sequence"]);
    long long x = p.value("x", 1 << 20);
    long long h_max = p.value("h_max", 64);
    SequenceBuffer buf = generate(ms, 0, x + h_max + 1, ctx.seed);
    std::ofstream os = open_csv(ctx, ctx.name);
    os << "h,empirical,model,abs_err,bound,pass\n";
    bool all = true;
    double logx = std::log(static_cast<double>(x) + 1.0);
    for (long long h = 0; h <= h_max; ++h) {
        double emp = autocorr(buf, x, h).real();
        double model = 0.0, bound = 0.0;
        bool has_model = true;
        if (ms.kind == MultiplierKind::thue_morse) {
            model = tm_sigma(h).to_double();
            bound = ctx.constants.tm_mahler_C * static_cast<double>(h) * logx /
                    static_cast<double>(x);
        } else if (ms.kind == MultiplierKind::squarefree) {
            model = mirsky_D(h);
            bound = 5.0 * std::pow(static_cast<double>(x), 0.68) /
                    static_cast<double>(x);
        } else {
            has_model = false;
        }
        bool pass = !has_model || h == 0 || std::abs(emp - model) <= bound;
        if (ms.kind == MultiplierKind::squarefree && h == 0)
            pass = std::abs(emp - model) <= bound;
        all = all && pass;
        os << h << "," << fmt(emp) << "," << fmt(model) << ","
           << fmt(std::abs(emp - model)) << "," << fmt(bound) << ","
           << (pass ? 1 : 0) << "\n";
    }
    (*ctx.metrics)["all_pass"] = all;
}

void run_spectral_suite(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    MultiplierSpec ms = build_sequence(ctx.cfg["sequence"]);
    std::ofstream os = open_csv(ctx, ctx.name);
    if (ms.kind == MultiplierKind::thue_morse) {
        int n = p.value("n", 12);
        int samples = p.value("t_samples", 256);
        SequenceBuffer buf = generate(ms, 0, 1ll << n, 0);
        os << "t,empirical,riesz,rel_err\n";
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            double t = static_cast<double>(hash64(ctx.seed, i) >> 28) * 0x1.0p-36;
            double emp = empirical_spectral_density(buf, 1ll << n, t);
            double riesz = tm_riesz_density(t, n);
            double rel = std::abs(emp - riesz) / std::max(riesz, 1e-300);
            worst = std::max(worst, rel);
            os << fmt(t) << "," << fmt(emp) << "," << fmt(riesz) << "," << fmt(rel)
               << "\n";
        }
        (*ctx.metrics)["max_rel_err"] = worst;
    } else if (ms.kind == MultiplierKind::squarefree) {
        int d_max = p.value("d_max", 1000);
        SpectralModel m = SpectralModel::sqfree(d_max);
        os << "h,atom_fourier,mirsky_D,abs_err\n";
        double worst = 0.0;
        for (long long h = 0; h <= p.value("h_max", 36); ++h) {
            double af = m.fourier(h);
            double dd = mirsky_D(h);
            worst = std::max(worst, std::abs(af - dd));
            os << h << "," << fmt(af) << "," << fmt(dd) << ","
               << fmt(std::abs(af - dd)) << "\n";
        }
        (*ctx.metrics)["total_mass"] = m.total_mass();
        (*ctx.metrics)["max_fourier_err"] = worst;
    } else {
        throw validation_error(
            "spectral_suite: sequence.kind must be thue_morse or squarefree");
    }
}

void run_weyl_scan(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    SmoothWeight w = build_weight(ctx.cfg["weight"]);
    MultiplierSpec ms = build_sequence(ctx.cfg["sequence"]);
    SeriesSpec spec(w, ms, ctx.seed, p.value("max_index", 4096));
    double R = p["R"].get<double>();
    int points = p.value("theta_points", 512);
    std::ofstream os = open_csv(ctx, ctx.name);
    os << "theta,abs_w\n";
    double best = 0.0;
    for (int i = 0; i < points; ++i) {
        double th = static_cast<double>(i) / points;
        double a = std::abs(spec.weyl_sum(R, th));
        best = std::max(best, a);
        os << fmt(th) << "," << fmt(a) << "\n";
    }
    (*ctx.metrics)["max_abs_w"] = best;
    (*ctx.metrics)["sigma_quarter"] = std::pow(w.sigma(R), 0.25);
}

void run_condition_check(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    SmoothWeight w = build_weight(ctx.cfg["weight"]);
    MultiplierSpec ms = build_sequence(ctx.cfg["sequence"]);
    double R = p["R"].get<double>();
    double beta = p["beta"].get<double>();
    double pp = p.value("p", 2.0);
    double q = p.value("q", 1.05);
    double sigma = w.sigma(R);
    long long need =
        static_cast<long long>(std::ceil(w.nu(R * (1.0 + beta)) + beta * sigma +
                                         std::pow(beta, -q) +
                                         6.0 * std::sqrt(sigma * std::log(sigma)))) +
        16;
    SequenceBuffer buf = generate(ms, 0, need, ctx.seed);
    ConditionResult c1 = check_condition1(buf, w, R, beta);
    Condition2Result c2 = check_condition2(buf, w, R, beta, pp, q);
    std::ofstream os = open_csv(ctx, ctx.name);
    os << "condition,lhs,rhs,ratio\n";
    os << "1," << fmt(c1.lhs) << "," << fmt(c1.rhs) << "," << fmt(c1.ratio) << "\n";
    os << "2," << fmt(c2.lhs) << "," << fmt(c2.rhs) << "," << fmt(c2.ratio) << "\n";
    (*ctx.metrics)["condition1_ratio"] = c1.ratio;
    (*ctx.metrics)["condition2_ratio"] = c2.ratio;
}

void run_transport_check(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    int n = p.value("disks", 50);
    double rad_max = p.value("radius_max", 20.0);
    double span = p.value("center_span", 20.0);
    TransportFamily fam;
    double dom = span + rad_max + 24.0;
    fam.domain_radius = dom;
    long long lim = static_cast<long long>(std::ceil(dom));
    for (long long x = -lim; x <= lim; ++x)
        for (long long y = -lim; y <= lim; ++y)
            if (static_cast<double>(x) * x + static_cast<double>(y) * y <= dom * dom)
                fam.points.push_back(cplx{static_cast<double>(x),
                                          static_cast<double>(y)});
    fam.reference_mass = [](const LatticeDisk& d) { return pi * d.r * d.r; };
    std::vector<LatticeDisk> disks;
    for (int i = 0; i < n; ++i) {
        std::uint64_t h = hash64(ctx.seed ^ 0x7a5ull, static_cast<std::uint64_t>(i));
        disks.push_back(LatticeDisk{span * (2.0 * u01(h) - 1.0),
                                    span * (2.0 * u01(hash64(h, 1)) - 1.0),
                                    0.5 + (rad_max - 0.5) * u01(hash64(h, 2))});
    }
    RadialGauge g = RadialGauge::constant(p.value("rho0", std::sqrt(2.0)));
    TransportReport rep = transport_check(fam, disks, g, p.value("tau_max", 16.0));
    std::ofstream os = open_csv(ctx, ctx.name);
    os << "min_tau,converged\n";
    os << fmt(rep.min_tau) << "," << (rep.converged ? 1 : 0) << "\n";
    (*ctx.metrics)["min_tau"] = rep.min_tau;
}

void run_lattice_baseline(const ExperimentCtx& ctx) {
    const json& p = ctx.cfg["params"];
    int n = p.value("count", 100);
    double rad_max = p.value("radius_max", 50.0);
    std::ofstream os = open_csv(ctx, ctx.name);
    os << "kind,p1,p2,p3,p4,count,area,bound,pass\n";
    bool all = true;
    for (int i = 0; i < n; ++i) {
        std::uint64_t h = hash64(ctx.seed ^ 0x1a77ull, static_cast<std::uint64_t>(i));
        LatticeCheck c;
        if (i % 2 == 0) {
            LatticeDisk d{20.0 * (2.0 * u01(h) - 1.0),
                          20.0 * (2.0 * u01(hash64(h, 1)) - 1.0),
                          rad_max * u01(hash64(h, 2))};
            c = gauss_lattice_check(d);
            os << "disk," << fmt(d.cx) << "," << fmt(d.cy) << "," << fmt(d.r)
               << ",0";
        } else {
            double x1 = 30.0 * (2.0 * u01(h) - 1.0);
            double y1 = 30.0 * (2.0 * u01(hash64(h, 1)) - 1.0);
            LatticeRect r{x1, x1 + 2.0 * rad_max * u01(hash64(h, 2)), y1,
                          y1 + 2.0 * rad_max * u01(hash64(h, 3))};
            c = gauss_lattice_check(r);
            os << "rect," << fmt(r.x1) << "," << fmt(r.x2) << "," << fmt(r.y1)
               << "," << fmt(r.y2);
        }
        all = all && c.pass;
        os << "," << c.count << "," << fmt(c.area) << "," << fmt(c.bound) << ","
           << (c.pass ? 1 : 0) << "\n";
    }
    (*ctx.metrics)["all_pass"] = all;
}

void dispatch(const ExperimentCtx& ctx) {
    std::string exp = ctx.cfg.value("experiment", "");
    if (exp == "zero_count_sweep") return run_zero_count_sweep(ctx);
    if (exp == "sector_equidist") return run_sector_equidist(ctx);
    if (exp == "local_disks") return run_local_disks(ctx);
    if (exp == "correlation_suite") return run_correlation_suite(ctx);
    if (exp == "spectral_suite") return run_spectral_suite(ctx);
    if (exp == "weyl_scan") return run_weyl_scan(ctx);
    if (exp == "condition_check") return run_condition_check(ctx);
    if (exp == "transport_check") return run_transport_check(ctx);
    if (exp == "lattice_baseline") return run_lattice_baseline(ctx);
    throw validation_error("unknown experiment: " + exp);
}

bool needs_weight(const std::string& exp) {
    return exp == "zero_count_sweep" || exp == "sector_equidist" ||
           exp == "local_disks" || exp == "weyl_scan" || exp == "condition_check";
}

bool needs_sequence(const std::string& exp) {
    return exp == "zero_count_sweep" || exp == "sector_equidist" ||
           exp == "local_disks" || exp == "correlation_suite" ||
           exp == "spectral_suite" || exp == "weyl_scan" ||
           exp == "condition_check";
}

// Static consistency of windows: max_index must admit the largest window
// the experiment will request.
void validate_capacity(const json& e, const std::string& where,
                       std::vector<std::string>& errs) {
    if (!e.contains("weight") || !e.contains("params")) return;
    std::string exp = e.value("experiment", "");
    // Only experiments evaluating through the central window are bound by
    // max_index; condition_check sizes its own buffer.
    if (exp != "zero_count_sweep" && exp != "sector_equidist" &&
        exp != "local_disks" && exp != "weyl_scan")
        return;
    const json& p = e["params"];
    double A = p.value("A", 6.0);
    double r_max = 0.0;
    if (p.contains("R_list"))
        for (const auto& r : p["R_list"]) r_max = std::max(r_max, r.get<double>());
    if (p.contains("r2")) r_max = std::max(r_max, p["r2"].get<double>());
    if (p.contains("R")) r_max = std::max(r_max, p["R"].get<double>());
    if (p.contains("r_hi"))
        r_max = std::max(r_max, p["r_hi"].get<double>() * 1.25);
    if (r_max <= 1.0) return;
    try {
        SmoothWeight w = build_weight(e["weight"]);
        double sigma = w.sigma(r_max);
        if (sigma < 3.0) return;
        double need = w.nu(r_max) + A * std::sqrt(sigma * std::log(sigma)) + 1.0;
        long long have = p.value("max_index", 1024);
        if (static_cast<double>(have) < need)
            errs.push_back(where + ".params.max_index: " + std::to_string(have) +
                           " is below the required window " +
                           std::to_string(static_cast<long long>(need) + 1));
    } catch (const std::exception&) {
        // weight errors already reported
    }
}

std::vector<std::string> validate_doc(const json& doc) {
    std::vector<std::string> errs;
    if (!doc.is_object()) {
        errs.push_back("config: must be a JSON object");
        return errs;
    }
    if (doc.value("version", 0) != 1)
        errs.push_back("version: expected 1");
    if (!doc.contains("experiments") || !doc["experiments"].is_array()) {
        errs.push_back("experiments: array required");
        return errs;
    }
    int idx = 0;
    for (const json& e : doc["experiments"]) {
        std::string where = "experiments[" + std::to_string(idx++) + "]";
        if (!e.is_object()) {
            errs.push_back(where + ": must be an object");
            continue;
        }
        std::string exp = e.value("experiment", "");
        if (!known_experiment(exp)) {
            errs.push_back(where + ".experiment: unknown '" + exp + "'");
            continue;
        }
        if (needs_weight(exp)) {
            if (!e.contains("weight"))
                errs.push_back(where + ".weight: required for " + exp);
            else
                validate_weight(e["weight"], where + ".weight", errs);
        }
        if (needs_sequence(exp)) {
            if (!e.contains("sequence"))
                errs.push_back(where + ".sequence: required for " + exp);
            else
                validate_sequence(e["sequence"], where + ".sequence", errs);
        }
        if (!e.contains("params") || !e["params"].is_object())
            errs.push_back(where + ".params: object required");
        else if (e["params"].contains("gauge"))
            validate_gauge(e["params"]["gauge"], where + ".params.gauge", errs);
        if (exp == "zero_count_sweep" &&
            (!e.contains("params") || !e["params"].contains("R_list")))
            errs.push_back(where + ".params.R_list: required");
        if (exp == "sector_equidist" && e.contains("params") &&
            (!e["params"].contains("r1") || !e["params"].contains("r2")))
            errs.push_back(where + ".params: r1 and r2 required");
        if ((exp == "weyl_scan" || exp == "condition_check") &&
            e.contains("params") && !e["params"].contains("R"))
            errs.push_back(where + ".params.R: required");
        if (exp == "condition_check" && e.contains("params") &&
            !e["params"].contains("beta"))
            errs.push_back(where + ".params.beta: required");
        validate_capacity(e, where, errs);
    }
    return errs;
}

}  // namespace

std::vector<std::string> validate_config(const std::string& config_json) {
    json doc;
    try {
        doc = json::parse(config_json);
    } catch (const json::parse_error& e) {
        return {std::string("config: JSON parse error: ") + e.what()};
    }
    return validate_doc(doc);
}

RunResult run_config(const std::string& config_json, const std::string& out_dir,
                     const FrozenConstants& constants, int threads) {
    json doc;
    try {
        doc = json::parse(config_json);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("config: JSON parse error: ") + e.what());
    }
    std::vector<std::string> errs = validate_doc(doc);
    if (!errs.empty()) {
        std::string msg = "config validation failed:";
        for (const std::string& e : errs) msg += "\n  " + e;
        throw validation_error(msg);
    }

    RunResult result;
    if (doc["experiments"].empty()) return result;  // nothing to do

    std::filesystem::create_directories(out_dir);
    std::string config_hash = hex64(fnv1a(doc.dump()));
    std::string constants_hash = hex64(constants.hash());
    json summary;
    summary["version"] = kVersionString;
    summary["config_hash"] = config_hash;
    summary["constants_hash"] = constants_hash;
    summary["experiments"] = json::array();

    int idx = 0;
    for (const json& e : doc["experiments"]) {
        std::string name = e.value("name", "experiment" + std::to_string(idx));
        std::uint64_t seed = e.contains("sequence")
                                 ? e["sequence"].value("seed", doc.value("seed", 0ull))
                                 : doc.value("seed", 0ull);
        json metrics;
        ExperimentCtx ctx{e,    name,        out_dir, config_hash, constants_hash,
                          seed, threads,     constants, &result.outputs, &metrics};
        dispatch(ctx);
        json entry;
        entry["name"] = name;
        entry["experiment"] = e.value("experiment", "");
        entry["seed"] = seed;
        entry["metrics"] = metrics;
        summary["experiments"].push_back(entry);
        ++idx;
        ++result.experiments_run;
    }

    result.summary_json = summary.dump(2) + "\n";
    std::string spath = out_dir + "/summary.json";
    std::ofstream ss(spath, std::ios::binary);
    ss << result.summary_json;
    result.outputs.push_back(spath);
    return result;
}

}  // namespace zerolab
