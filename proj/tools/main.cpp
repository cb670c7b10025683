// zerolab command-line tool.  Subcommands map one-to-one to the library
// modules; `run` executes a JSON experiment config.  Exit codes: 0 ok,
// 2 validation, 3 capacity, 4 numeric.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "zerolab/correlations.hpp"
#include "zerolab/equidist.hpp"
#include "zerolab/evaluator.hpp"
#include "zerolab/experiments.hpp"
#include "zerolab/zeros.hpp"

using namespace zerolab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SmoothWeight weight_from_flag(const std::string& s) {
    // "log:0.5" or "power:0.5:1.0"
    std::istringstream ss(s);
    std::string fam;
    std::getline(ss, fam, ':');
    if (fam == "log") {
        double a;
        if (!(ss >> a))
            throw validation_error("--weight: expected log:<alpha>");
        return SmoothWeight(LogFamily{a});
    }
    if (fam == "power") {
        double b, c;
        char sep;
        if (!(ss >> b >> sep >> c))
            throw validation_error("--weight: expected power:<beta>:<c>");
        return SmoothWeight(PowerFamily{b, c});
    }
    throw validation_error("--weight: family must be log or power");
}

int dispatch(int argc, char** argv) {
    CLI::App app{std::string(kVersionString) +
                 " - zeros of power series with structured multipliers"};
    app.require_subcommand(1);

    // ---- weights ----------------------------------------------------------
    auto* cmd_w = app.add_subcommand("weights", "evaluate nu, sigma, log mu");
    std::string w_family = "log:0.5";
    std::vector<double> w_radii;
    cmd_w->add_option("--weight", w_family, "log:<alpha> or power:<beta>:<c>");
    cmd_w->add_option("--R", w_radii, "radii to tabulate")->required();
    cmd_w->callback([&] {
        SmoothWeight w = weight_from_flag(w_family);
        std::printf("R,nu,sigma,log_mu\n");
        for (double R : w_radii)
            std::printf("%.17g,%.17g,%.17g,%.17g\n", R, w.nu(R), w.sigma(R),
                        w.log_mu(R));
    });

    // ---- seq --------------------------------------------------------------
    auto* cmd_s = app.add_subcommand("seq", "generate a multiplier buffer");
    std::string s_kind = "thue_morse", s_out, s_format = "csv";
    long long s_n0 = 0, s_n1 = 64;
    std::uint64_t s_seed = 0;
    double s_alpha = 0.0;
    cmd_s->add_option("--kind", s_kind, "multiplier kind");
    cmd_s->add_option("--alpha", s_alpha, "quadratic phase alpha");
    cmd_s->add_option("--n0", s_n0, "first index");
    cmd_s->add_option("--n1", s_n1, "one past the last index");
    cmd_s->add_option("--seed", s_seed, "seed for random kinds");
    cmd_s->add_option("--out", s_out, "output file (default stdout csv)");
    cmd_s->add_option("--format", s_format, "csv or bin");
    cmd_s->callback([&] {
        MultiplierSpec ms;
        ms.kind = multiplier_kind_from_name(s_kind);
        ms.alpha = s_alpha;
        SequenceBuffer buf = generate(ms, s_n0, s_n1, s_seed);
        if (s_out.empty()) {
            write_csv(buf, std::cout);
        } else {
            std::ofstream os(s_out, std::ios::binary);
            if (!os) throw validation_error("cannot open " + s_out);
            if (s_format == "bin")
                write_binary(buf, os);
            else
                write_csv(buf, os);
        }
    });

    // ---- corr -------------------------------------------------------------
    auto* cmd_c = app.add_subcommand("corr", "empirical autocorrelations");
    std::string c_kind = "thue_morse";
    long long c_x = 1 << 20, c_hmax = 64;
    std::uint64_t c_seed = 0;
    double c_alpha = 0.0;
    cmd_c->add_option("--kind", c_kind, "multiplier kind");
    cmd_c->add_option("--alpha", c_alpha, "quadratic phase alpha");
    cmd_c->add_option("--x", c_x, "sample size");
    cmd_c->add_option("--h-max", c_hmax, "largest shift");
    cmd_c->add_option("--seed", c_seed, "seed for random kinds");
    cmd_c->callback([&] {
        MultiplierSpec ms;
        ms.kind = multiplier_kind_from_name(c_kind);
        ms.alpha = c_alpha;
        SequenceBuffer buf = generate(ms, 0, c_x + c_hmax + 1, c_seed);
        std::printf("h,re,im\n");
        for (long long h = 0; h <= c_hmax; ++h) {
            cplx a = autocorr(buf, c_x, h);
            std::printf("%lld,%.17g,%.17g\n", h, a.real(), a.imag());
        }
    });

    // ---- zeros ------------------------------------------------------------
    auto* cmd_z = app.add_subcommand("zeros", "count zeros on origin disks");
    std::string z_weight = "log:0.5", z_kind = "iid_gaussian";
    std::vector<double> z_radii;
    long long z_max_index = 2048;
    std::uint64_t z_seed = 1;
    double z_alpha = 0.0;
    cmd_z->add_option("--weight", z_weight, "weight family");
    cmd_z->add_option("--kind", z_kind, "multiplier kind");
    cmd_z->add_option("--alpha", z_alpha, "quadratic phase alpha");
    cmd_z->add_option("--R", z_radii, "disk radii")->required();
    cmd_z->add_option("--max-index", z_max_index, "multipliers to materialize");
    cmd_z->add_option("--seed", z_seed, "seed");
    cmd_z->callback([&] {
        SmoothWeight w = weight_from_flag(z_weight);
        MultiplierSpec ms;
        ms.kind = multiplier_kind_from_name(z_kind);
        ms.alpha = z_alpha;
        SeriesSpec spec(w, ms, z_seed, z_max_index);
        std::printf("R,count,gamma\n");
        for (double R : z_radii) {
            ZeroCountReport rep = count_region(spec, {CircleContour{0.0, R}, 256});
            std::printf("%.17g,%lld,%.17g\n", R, rep.count, rep.gamma_mass);
        }
    });

    // ---- equidist ---------------------------------------------------------
    auto* cmd_e = app.add_subcommand("equidist", "lattice baseline table");
    int e_count = 100;
    double e_rmax = 50.0;
    std::uint64_t e_seed = 0;
    cmd_e->add_option("--count", e_count, "number of random regions");
    cmd_e->add_option("--radius-max", e_rmax, "largest region radius");
    cmd_e->add_option("--seed", e_seed, "seed");
    cmd_e->callback([&] {
        std::printf("kind,count,area,bound,pass\n");
        for (int i = 0; i < e_count; ++i) {
            std::uint64_t h = hash64(e_seed ^ 0x1a77ull, static_cast<std::uint64_t>(i));
            LatticeCheck c;
            const char* kind;
            if (i % 2 == 0) {
                c = gauss_lattice_check(LatticeDisk{
                    20.0 * (2.0 * u01(h) - 1.0),
                    20.0 * (2.0 * u01(hash64(h, 1)) - 1.0), e_rmax * u01(hash64(h, 2))});
                kind = "disk";
            } else {
                double x1 = 30.0 * (2.0 * u01(h) - 1.0);
                double y1 = 30.0 * (2.0 * u01(hash64(h, 1)) - 1.0);
                c = gauss_lattice_check(LatticeRect{
                    x1, x1 + 2.0 * e_rmax * u01(hash64(h, 2)), y1,
                    y1 + 2.0 * e_rmax * u01(hash64(h, 3))});
                kind = "rect";
            }
            std::printf("%s,%lld,%.17g,%.17g,%d\n", kind, c.count, c.area, c.bound,
                        c.pass ? 1 : 0);
        }
    });

    // ---- run --------------------------------------------------------------
    auto* cmd_r = app.add_subcommand("run", "run a JSON experiment config");
    std::string r_config, r_out = ".", r_constants;
    std::uint64_t r_seed = 0;
    bool r_validate = false;
    int r_threads = 1;
    cmd_r->add_option("--config", r_config, "config path")->required();
    cmd_r->add_option("--out", r_out, "output directory");
    auto* seed_opt = cmd_r->add_option("--seed", r_seed, "override top-level seed");
    cmd_r->add_option("--threads", r_threads, "worker threads");
    cmd_r->add_option("--constants", r_constants, "frozen constants file");
    cmd_r->add_flag("--validate", r_validate, "validate only, run nothing");
    cmd_r->callback([&] {
        std::string text = slurp(r_config);
        if (seed_opt->count() > 0) {
            nlohmann::json doc = nlohmann::json::parse(text);
            doc["seed"] = r_seed;
            text = doc.dump();
        }
        if (r_validate) {
            std::vector<std::string> errs = validate_config(text);
            if (errs.empty()) {
                std::printf("ok\n");
                return;
            }
            for (const std::string& e : errs) std::fprintf(stderr, "%s\n", e.c_str());
            throw validation_error("config validation failed");
        }
        FrozenConstants fc = r_constants.empty()
                                 ? FrozenConstants{}
                                 : FrozenConstants::load_file(r_constants);
        RunResult res = run_config(text, r_out, fc, r_threads);
        for (const std::string& p : res.outputs) std::printf("%s\n", p.c_str());
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IOFBF, 1 << 16);
    try {
        return dispatch(argc, argv);
    } catch (const capacity_error& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return 3;
    } catch (const validation_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
