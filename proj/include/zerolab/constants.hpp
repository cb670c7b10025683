#pragma once

// Frozen fitted constants.  The asymptotic statements being tested hide
// multiplicative constants; these were calibrated once on the reference
// configuration and are treated as regression thresholds afterwards.
// The built-in defaults match data/constants.json.

#include <cstdint>
#include <string>

namespace zerolab {

struct FrozenConstants {
    // |F_trunc/mu - W_R| <= laplace_K * Delta(sigma) (log sigma)^{3/2}
    double laplace_K = 0.3;
    // |F/mu| <= upper_K * sqrt(sigma) for |xi| <= 1
    double upper_K = 3.0;
    // local-disk discrepancy: |count - gamma| <= gef_local_C * gamma((dK)_{+tau})
    double gef_local_C = 0.25;
    double gef_local_tau = 2.0;
    // Golay-Rudin-Shapiro: max_M |sum xi xi(+h)| / (h (1 + log M))
    double grs_C = 2.0;
    // Thue-Morse Mahler constant: |S(x,h) - sigma(h) x| <= C h log(x+1)
    double tm_mahler_C = 8.0;
    // mu^2 dyadic-interval mass lower constant: chi(I) >= c |I|^{3/2}
    double sqfree_interval_c = 0.05;
    // Thue-Morse dyadic lower bound: chi_{2^n}(I') >= 2^{-m^2 - C m}
    double tm_interval_C = 4.0;

    std::string to_json() const;
    static FrozenConstants from_json(const std::string& text);
    static FrozenConstants load_file(const std::string& path);
    void save_file(const std::string& path) const;
    std::uint64_t hash() const;
};

}  // namespace zerolab
