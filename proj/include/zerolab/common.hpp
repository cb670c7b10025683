#pragma once

// Shared small utilities: error types, stable hashing, compensated
// summation, double-double products for exact phase reduction, and the
// e(t) = exp(2*pi*i*t) convention (angles in turns throughout).

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zerolab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

// ---------------------------------------------------------------------------
// Error taxonomy. The CLI maps these onto exit codes:
//   validation_error -> 2, capacity_error -> 3, numeric_error -> 4.
// ---------------------------------------------------------------------------

struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct capacity_error : std::runtime_error {
    long long required_max_index = -1;
    explicit capacity_error(const std::string& msg, long long required = -1)
        : std::runtime_error(msg), required_max_index(required) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct on_contour_zero_error : numeric_error {
    explicit on_contour_zero_error(const std::string& msg) : numeric_error(msg) {}
};

struct coverage_error : validation_error {
    explicit coverage_error(const std::string& msg) : validation_error(msg) {}
};

// ---------------------------------------------------------------------------
// Stable 64-bit hashing (splitmix64).  All randomness in the project is
// derived from hash64(seed, index), so any sub-range of a random sequence
// regenerates identically and independently of buffer boundaries.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash64(std::uint64_t seed, std::uint64_t n) {
    return splitmix64(splitmix64(seed) ^ splitmix64(n + 0x9E3779B97F4A7C15ull));
}

// Uniform double in [0,1) from 53 high bits.
inline double u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Compensated (Kahan) accumulators.
// ---------------------------------------------------------------------------

template <typename T>
struct kahan {
    T sum{};
    T comp{};
    void add(T x) {
        T y = x - comp;
        T t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    T value() const { return sum; }
};

struct kahan_cplx {
    kahan<double> re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

// Long-double variant for the spectral identities, where the comparison
// tolerance (1e-9 relative) can meet tiny densities.
struct kahan_cplx_ld {
    kahan<long double> re, im;
    void add(long double x, long double y) {
        re.add(x);
        im.add(y);
    }
    std::complex<long double> value() const { return {re.value(), im.value()}; }
};

// ---------------------------------------------------------------------------
// Double-double helpers.  two_prod is exact via fma; dd_frac reduces a
// product a*b modulo 1 with error ~1e-17, used for phases k*theta and
// alpha*n^2 where naive doubles lose all accuracy.
// ---------------------------------------------------------------------------

struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

inline dd dd_add(dd a, double b) {
    dd s = two_sum(a.hi, b);
    s.lo += a.lo;
    dd r = two_sum(s.hi, s.lo);
    return r;
}

inline dd dd_mul(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    dd r = two_sum(p.hi, p.lo);
    return r;
}

// Fractional part of a double-double, reduced to [0,1).
inline double dd_frac(dd a) {
    double f = a.hi - std::floor(a.hi);
    double x = f + a.lo;
    x -= std::floor(x);
    if (x >= 1.0) x -= 1.0;
    if (x < 0.0) x += 1.0;
    return x;
}

// Fractional part of a plain double, in [0,1).
inline double frac(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    if (f < 0.0) f += 1.0;
    return f;
}

// e(t) = exp(2*pi*i*t), t in turns.
inline cplx unit_phase(double turns) {
    double t = frac(turns);
    return {std::cos(two_pi * t), std::sin(two_pi * t)};
}

// e(k*t) with the product k*t reduced mod 1 in double-double arithmetic.
inline cplx unit_phase_prod(double k, double t) {
    return unit_phase(dd_frac(two_prod(k, t)));
}

}  // namespace zerolab
