#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zerolab/common.hpp"
#include "zerolab/experiments.hpp"

using namespace zerolab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_dir(const std::string& tag) {
    std::string d = std::filesystem::temp_directory_path() /
                    ("zerolab_test_" + tag);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validation catches schema problems by field name") {
    std::string bad = R"({
      "version": 1,
      "experiments": [
        {"experiment": "sector_equidist",
         "weight": {"family": "log", "alpha": 0.5},
         "sequence": {"kind": "quadratic"},
         "params": {"r1": 5, "r2": 10, "max_index": 4096,
                    "gauge": {"kind": "power", "c": 0.6}}}
      ]
    })";
    auto errs = validate_config(bad);
    bool saw_gauge = false, saw_alpha = false;
    for (const std::string& e : errs) {
        if (e.find("gauge.c: must lie in (0, 1/2)") != std::string::npos)
            saw_gauge = true;
        if (e.find("sequence.alpha: required") != std::string::npos)
            saw_alpha = true;
    }
    CHECK(saw_gauge);
    CHECK(saw_alpha);
    CHECK(validate_config("{ not json").size() == 1);
    // Capacity consistency: max_index below the required window.
    std::string tight = R"({
      "version": 1,
      "experiments": [
        {"experiment": "zero_count_sweep",
         "weight": {"family": "log", "alpha": 0.5},
         "sequence": {"kind": "constant"},
         "params": {"R_list": [20.0], "max_index": 100}}
      ]
    })";
    auto errs2 = validate_config(tight);
    REQUIRE(errs2.size() == 1);
    CHECK(errs2[0].find("max_index") != std::string::npos);
}

TEST_CASE("well-formed config validates") {
    std::string good = R"({
      "version": 1,
      "seed": 5,
      "experiments": [
        {"name": "gef", "experiment": "zero_count_sweep",
         "weight": {"family": "log", "alpha": 0.5},
         "sequence": {"kind": "iid_gaussian", "seed": 5},
         "params": {"R_list": [5.0, 10.0], "max_index": 1024}}
      ]
    })";
    CHECK(validate_config(good).empty());
}

TEST_CASE("empty experiment list runs cleanly with no outputs") {
    std::string cfg = R"({"version": 1, "experiments": []})";
    std::string out = tmp_dir("empty");
    RunResult res = run_config(cfg, out, FrozenConstants{});
    CHECK(res.experiments_run == 0);
    CHECK(res.outputs.empty());
}

TEST_CASE("correlation suite run emits a passing table") {
    std::string cfg = R"({
      "version": 1,
      "experiments": [
        {"name": "tm_corr", "experiment": "correlation_suite",
         "sequence": {"kind": "thue_morse"},
         "params": {"x": 65536, "h_max": 16}}
      ]
    })";
    std::string out = tmp_dir("corr");
    RunResult res = run_config(cfg, out, FrozenConstants{});
    CHECK(res.experiments_run == 1);
    std::string csv = slurp(out + "/tm_corr.csv");
    CHECK(csv.find("h,empirical,model,abs_err,bound,pass") != std::string::npos);
    CHECK(csv.find("config_hash=") != std::string::npos);
    std::string summary = slurp(out + "/summary.json");
    CHECK(summary.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("lattice baseline and transport experiments run") {
    std::string cfg = R"({
      "version": 1,
      "experiments": [
        {"name": "lattice", "experiment": "lattice_baseline",
         "params": {"count": 20, "radius_max": 30.0}},
        {"name": "transport", "experiment": "transport_check",
         "params": {"disks": 10, "radius_max": 10.0, "center_span": 10.0}}
      ]
    })";
    std::string out = tmp_dir("lat");
    RunResult res = run_config(cfg, out, FrozenConstants{});
    CHECK(res.experiments_run == 2);
    std::string summary = slurp(out + "/summary.json");
    CHECK(summary.find("min_tau") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across reruns") {
    std::string cfg = R"({
      "version": 1,
      "seed": 9,
      "experiments": [
        {"name": "sweep", "experiment": "zero_count_sweep",
         "weight": {"family": "log", "alpha": 0.5},
         "sequence": {"kind": "iid_gaussian", "seed": 9},
         "params": {"R_list": [5.0, 8.0], "max_index": 512}}
      ]
    })";
    std::string out1 = tmp_dir("rep1");
    std::string out2 = tmp_dir("rep2");
    run_config(cfg, out1, FrozenConstants{}, 1);
    run_config(cfg, out2, FrozenConstants{}, 2);  // thread count must not matter
    CHECK(slurp(out1 + "/sweep.csv") == slurp(out2 + "/sweep.csv"));
    CHECK(slurp(out1 + "/summary.json") == slurp(out2 + "/summary.json"));
}

TEST_CASE("invalid config raises a validation error") {
    std::string cfg = R"({"version": 2, "experiments": []})";
    CHECK_THROWS_AS(run_config(cfg, tmp_dir("bad"), FrozenConstants{}),
                    validation_error);
}

}  // TEST_SUITE
