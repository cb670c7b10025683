#include "zerolab/constants.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "zerolab/common.hpp"

namespace zerolab {

std::string FrozenConstants::to_json() const {
    nlohmann::json j;
    j["laplace_K"] = laplace_K;
    j["upper_K"] = upper_K;
    j["gef_local_C"] = gef_local_C;
    j["gef_local_tau"] = gef_local_tau;
    j["grs_C"] = grs_C;
    j["tm_mahler_C"] = tm_mahler_C;
    j["sqfree_interval_c"] = sqfree_interval_c;
    j["tm_interval_C"] = tm_interval_C;
    return j.dump(2) + "\n";
}

FrozenConstants FrozenConstants::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FrozenConstants c;
    c.laplace_K = j.value("laplace_K", c.laplace_K);
    c.upper_K = j.value("upper_K", c.upper_K);
    c.gef_local_C = j.value("gef_local_C", c.gef_local_C);
    c.gef_local_tau = j.value("gef_local_tau", c.gef_local_tau);
    c.grs_C = j.value("grs_C", c.grs_C);
    c.tm_mahler_C = j.value("tm_mahler_C", c.tm_mahler_C);
    c.sqfree_interval_c = j.value("sqfree_interval_c", c.sqfree_interval_c);
    c.tm_interval_C = j.value("tm_interval_C", c.tm_interval_C);
    return c;
}

FrozenConstants FrozenConstants::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("constants: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void FrozenConstants::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw validation_error("constants: cannot write " + path);
    out << to_json();
}

std::uint64_t FrozenConstants::hash() const {
    std::string s = to_json();
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace zerolab
