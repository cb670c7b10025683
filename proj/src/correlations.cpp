#include "zerolab/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "zerolab/numerics.hpp"

#include "json.hpp"

namespace zerolab {

namespace {

std::vector<std::uint32_t> sieve_primes(long long n) {
    std::vector<bool> comp(static_cast<std::size_t>(n + 1), false);
    std::vector<std::uint32_t> ps;
    for (long long p = 2; p <= n; ++p) {
        if (comp[static_cast<std::size_t>(p)]) continue;
        ps.push_back(static_cast<std::uint32_t>(p));
        for (long long q = p * p; q <= n; q += p)
            comp[static_cast<std::size_t>(q)] = true;
    }
    return ps;
}

long long gcd_ll(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

Rational reduce(long long num, long long den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = gcd_ll(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

Rational rat_add(Rational a, Rational b) {
    long long g = gcd_ll(a.den, b.den);
    long long den = a.den / g * b.den;
    long long num = a.num * (b.den / g) + b.num * (a.den / g);
    return reduce(num, den);
}

}  // namespace

cplx autocorr(const SequenceBuffer& seq, long long X, long long h) {
    if (h < 0) throw validation_error("autocorr: h must be nonnegative");
    if (!seq.covers(0, X + h))
        throw validation_error("autocorr: buffer must cover [0, X+h)");
    kahan_cplx acc;
    for (long long n = 0; n < X; ++n)
        acc.add(seq.at(n) * std::conj(seq.at(n + h)));
    return acc.value() / static_cast<double>(X);
}

double s_star(const SequenceBuffer& seq, long long M1, long long M2, long long h) {
    if (h < 0) throw validation_error("s_star: h must be nonnegative");
    if (M1 > M2) throw validation_error("s_star: need M1 <= M2");
    if (!seq.covers(M1, M2 + h + 1))
        throw validation_error("s_star: buffer must cover [M1, M2+h]");
    kahan_cplx suffix;
    double best = 0.0;
    for (long long k = M2; k >= M1; --k) {
        suffix.add(seq.at(k) * std::conj(seq.at(k + h)));
        best = std::max(best, std::abs(suffix.value()));
    }
    return best;
}

EulerProduct mirsky_euler_product(long long prime_cutoff) {
    if (prime_cutoff < 1000)
        throw validation_error("mirsky_euler_product: cutoff must be >= 1e3");
    static std::mutex mtx;
    static std::map<long long, EulerProduct> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(prime_cutoff);
    if (it != cache.end()) return it->second;
    kahan<double> logsum;
    for (std::uint32_t p : sieve_primes(prime_cutoff))
        logsum.add(std::log1p(-2.0 / (static_cast<double>(p) * p)));
    EulerProduct ep;
    ep.cutoff = prime_cutoff;
    ep.value = std::exp(logsum.value());
    // sum_{p > x} 2/p^2 <= 2/(x log x) * (1 + o(1)); keep a safety factor.
    ep.tail_bound = 3.0 / (static_cast<double>(prime_cutoff) *
                           std::log(static_cast<double>(prime_cutoff)));
    cache[prime_cutoff] = ep;
    return ep;
}

double mirsky_D(long long h, long long prime_cutoff) {
    if (h < 0) throw validation_error("mirsky_D: h must be nonnegative");
    if (h == 0) return 6.0 / (pi * pi);
    double d = mirsky_euler_product(prime_cutoff).value;
    long long m = h;
    for (long long p = 2; p * p <= m; p += (p == 2) ? 1 : 2) {
        if (m % (p * p) == 0) d *= 1.0 + 1.0 / (static_cast<double>(p) * p - 2.0);
        while (m % p == 0) m /= p;
    }
    return d;
}

namespace {

Rational tm_sigma_impl(long long h, std::unordered_map<long long, Rational>& memo) {
    auto it = memo.find(h);
    if (it != memo.end()) return it->second;
    Rational r;
    if (h % 2 == 0) {
        r = tm_sigma_impl(h / 2, memo);
    } else {
        Rational s = rat_add(tm_sigma_impl(h / 2, memo),
                             tm_sigma_impl(h / 2 + 1, memo));
        r = reduce(-s.num, 2 * s.den);
    }
    memo[h] = r;
    return r;
}

}  // namespace

Rational tm_sigma(long long h) {
    if (h < 0) throw validation_error("tm_sigma: h must be nonnegative");
    static std::mutex mtx;
    static std::unordered_map<long long, Rational> memo = {{0, {1, 1}},
                                                           {1, {-1, 3}}};
    std::lock_guard<std::mutex> lock(mtx);
    return tm_sigma_impl(h, memo);
}

double tm_riesz_density(double t, int depth) {
    if (depth < 1) throw validation_error("tm_riesz_density: depth must be >= 1");
    double tj = frac(t);
    double prod = 1.0;
    for (int j = 0; j < depth; ++j) {
        double s = std::sin(pi * tj);
        prod *= 2.0 * s * s;
        tj *= 2.0;               // exact
        if (tj >= 1.0) tj -= 1.0;  // exact dyadic reduction
    }
    return prod;
}

double empirical_spectral_density(const SequenceBuffer& seq, long long N, double t) {
    if (!seq.covers(0, N))
        throw validation_error("empirical_spectral_density: buffer must cover [0,N)");
    kahan_cplx_ld acc;
    for (long long k = 0; k < N; ++k) {
        double ph = dd_frac(two_prod(static_cast<double>(k), t));
        long double a = two_pi * static_cast<long double>(ph);
        cplx xi = seq.at(k);
        long double c = std::cos(a), s = std::sin(a);
        long double re = static_cast<long double>(xi.real());
        long double im = static_cast<long double>(xi.imag());
        acc.add(re * c - im * s, re * s + im * c);
    }
    std::complex<long double> z = acc.value();
    long double a2 = z.real() * z.real() + z.imag() * z.imag();
    return static_cast<double>(a2 / static_cast<long double>(N));
}

// ---------------------------------------------------------------------------
// SpectralModel
// ---------------------------------------------------------------------------

SpectralModel SpectralModel::lebesgue() {
    SpectralModel m;
    m.kind_ = Kind::lebesgue;
    return m;
}

SpectralModel SpectralModel::tm_riesz(int depth) {
    if (depth < 1) throw validation_error("tm_riesz: depth must be >= 1");
    SpectralModel m;
    m.kind_ = Kind::tm_riesz;
    m.param_ = depth;
    return m;
}

SpectralModel SpectralModel::empirical(const SequenceBuffer& seq, long long N) {
    if (N < 1 || N > (1ll << 24))
        throw validation_error("empirical: N must lie in [1, 2^24]");
    if (!seq.covers(0, N))
        throw validation_error("empirical: buffer must cover [0, N)");
    SpectralModel m;
    m.kind_ = Kind::empirical;
    m.param_ = static_cast<int>(N);
    m.emp_.assign(seq.values.begin(),
                  seq.values.begin() + static_cast<std::ptrdiff_t>(N));
    return m;
}

SpectralModel SpectralModel::sqfree(int d_max, long long prime_cutoff) {
    if (d_max < 1) throw validation_error("sqfree_atoms: d_max must be >= 1");
    SpectralModel m;
    m.kind_ = Kind::sqfree_atoms;
    m.param_ = d_max;
    double D = mirsky_euler_product(prime_cutoff).value;
    for (int d = 1; d <= d_max; ++d) {
        int md = d;
        double f = 1.0;
        bool squarefree = true;
        for (int p = 2; p * p <= md; p += (p == 2) ? 1 : 2) {
            if (md % p == 0) {
                md /= p;
                if (md % p == 0) {
                    squarefree = false;
                    break;
                }
                f /= static_cast<double>(p) * p - 2.0;
            }
        }
        if (!squarefree) continue;
        if (md > 1) f /= static_cast<double>(md) * md - 2.0;
        double d2 = static_cast<double>(d) * d;
        m.sqfree_d_.push_back(d);
        m.sqfree_mass_.push_back(D * f / d2);
    }
    return m;
}

double SpectralModel::total_mass() const {
    switch (kind_) {
        case Kind::lebesgue:
        case Kind::tm_riesz:
            return 1.0;
        case Kind::empirical:
            return fourier(0);
        case Kind::sqfree_atoms: {
            kahan<double> acc;
            for (std::size_t i = 0; i < sqfree_d_.size(); ++i) {
                double d2 = static_cast<double>(sqfree_d_[i]) * sqfree_d_[i];
                acc.add(sqfree_mass_[i] * d2);
            }
            return acc.value();
        }
        default:
            throw validation_error("total_mass: unsupported model");
    }
}

double SpectralModel::fourier(long long h) const {
    if (h < 0) h = -h;
    switch (kind_) {
        case Kind::lebesgue:
            return h == 0 ? 1.0 : 0.0;
        case Kind::sqfree_atoms: {
            // sum_j e(h j/d^2) = d^2 when d^2 | h, else 0.
            kahan<double> acc;
            for (std::size_t i = 0; i < sqfree_d_.size(); ++i) {
                long long d2 = static_cast<long long>(sqfree_d_[i]) * sqfree_d_[i];
                if (h % d2 == 0)
                    acc.add(sqfree_mass_[i] * static_cast<double>(d2));
            }
            return acc.value();
        }
        case Kind::tm_riesz: {
            double hh = static_cast<double>(h);
            auto f = [&](double t) {
                return tm_riesz_density(t, param_) * std::cos(two_pi * hh * t);
            };
            return integrate_gk(f, 0.0, 1.0, 1e-12, 20000);
        }
        case Kind::empirical: {
            // chi_N^(h) = (1/N) sum_k xi(k) conj xi(k+h), the plain
            // truncated correlation sum.
            if (h >= param_) return 0.0;
            kahan_cplx acc;
            for (long long k = 0; k + h < param_; ++k)
                acc.add(emp_[static_cast<std::size_t>(k)] *
                        std::conj(emp_[static_cast<std::size_t>(k + h)]));
            return acc.value().real() / static_cast<double>(param_);
        }
        default:
            throw validation_error("fourier: unsupported model");
    }
}

double SpectralModel::interval_mass(double lo, double hi) const {
    if (!(lo <= hi && lo >= 0.0 && hi <= 1.0))
        throw validation_error("interval_mass: need 0 <= lo <= hi <= 1");
    switch (kind_) {
        case Kind::lebesgue:
            return hi - lo;
        case Kind::sqfree_atoms: {
            kahan<double> acc;
            for (std::size_t i = 0; i < sqfree_d_.size(); ++i) {
                double d2 = static_cast<double>(sqfree_d_[i]) * sqfree_d_[i];
                // count of j in [lo d^2, hi d^2)
                double cnt = std::ceil(hi * d2) - std::ceil(lo * d2);
                if (cnt > 0) acc.add(sqfree_mass_[i] * cnt);
            }
            return acc.value();
        }
        case Kind::tm_riesz: {
            auto f = [&](double t) { return tm_riesz_density(t, param_); };
            return integrate_gk(f, lo, hi, 1e-13, 20000);
        }
        case Kind::empirical: {
            auto f = [&](double t) { return density(t); };
            return integrate_gk(f, lo, hi, 1e-11, 20000);
        }
        default:
            throw validation_error("interval_mass: unsupported model");
    }
}

double SpectralModel::density(double t) const {
    switch (kind_) {
        case Kind::lebesgue:
            return 1.0;
        case Kind::tm_riesz:
            return tm_riesz_density(t, param_);
        case Kind::empirical: {
            kahan_cplx acc;
            for (long long k = 0; k < param_; ++k)
                acc.add(emp_[static_cast<std::size_t>(k)] *
                        unit_phase_prod(static_cast<double>(k), t));
            return std::norm(acc.value()) / static_cast<double>(param_);
        }
        default:
            throw validation_error("density: model is atomic");
    }
}

std::vector<SpectralAtom> SpectralModel::atoms() const {
    if (kind_ != Kind::sqfree_atoms)
        throw validation_error("atoms: only atomic models have atoms");
    double total = 0.0;
    for (int d : sqfree_d_) total += static_cast<double>(d) * d;
    if (total > 4e6)
        throw capacity_error("atoms: materialization too large; use the per-d accessors");
    // Merge co-located atoms: position j/d^2 keyed by the reduced fraction.
    std::map<std::pair<long long, long long>, double> merged;
    for (std::size_t i = 0; i < sqfree_d_.size(); ++i) {
        long long d2 = static_cast<long long>(sqfree_d_[i]) * sqfree_d_[i];
        for (long long j = 0; j < d2; ++j) {
            long long g = gcd_ll(j, d2);
            merged[{j / (g ? g : 1), d2 / (g ? g : 1)}] += sqfree_mass_[i];
        }
    }
    // gcd(0, d2) = d2, so j=0 reduces to 0/1 as intended.
    std::vector<SpectralAtom> out;
    out.reserve(merged.size());
    for (const auto& [key, mass] : merged)
        out.push_back({static_cast<double>(key.first) / static_cast<double>(key.second),
                       mass});
    std::sort(out.begin(), out.end(), [](const SpectralAtom& a, const SpectralAtom& b) {
        return a.pos_turns < b.pos_turns;
    });
    return out;
}

std::string SpectralModel::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::lebesgue: j["kind"] = "lebesgue"; break;
        case Kind::sqfree_atoms: j["kind"] = "sqfree_atoms"; break;
        case Kind::tm_riesz: j["kind"] = "tm_riesz"; break;
        case Kind::empirical: j["kind"] = "empirical"; break;
    }
    j["params"] = {{"param", param_}};
    if (kind_ == Kind::sqfree_atoms) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& a : atoms())
            arr.push_back({{"pos_turns", a.pos_turns}, {"mass", a.mass}});
        j["atoms"] = std::move(arr);
    } else {
        j["atoms"] = nlohmann::json::array();
    }
    return j.dump();
}

// ---------------------------------------------------------------------------
// Condition checkers
// ---------------------------------------------------------------------------

ConditionResult check_condition1(const SequenceBuffer& seq, const SmoothWeight& w,
                                 double R, double beta) {
    auto [nu, sigma] = w.nu_sigma(R);
    long long k0 = static_cast<long long>(std::ceil(nu));
    long long k1 = static_cast<long long>(std::floor(nu + 0.5 * beta * sigma));
    if (!seq.covers(k0, k1 + 1))
        throw validation_error("check_condition1: buffer must cover the window");
    kahan<double> acc;
    for (long long k = k0; k <= k1; ++k) acc.add(std::norm(seq.at(k)));
    ConditionResult r;
    r.lhs = acc.value();
    r.rhs = beta * sigma;
    r.ratio = r.lhs / r.rhs;
    return r;
}

Condition2Result check_condition2(const SequenceBuffer& seq, const SmoothWeight& w,
                                  double R, double beta, double p, double q,
                                  double window_A) {
    if (!(p > 1.0)) throw validation_error("check_condition2: p must exceed 1");
    if (!(q > 1.0)) throw validation_error("check_condition2: q must exceed 1");
    auto [nu, sigma] = w.nu_sigma(R);
    double nu2 = w.nu(R * (1.0 + beta));
    Condition2Result r;
    r.M1 = std::max<long long>(0, static_cast<long long>(std::floor(nu - beta * sigma)));
    r.M2 = static_cast<long long>(std::ceil(nu2 + beta * sigma));
    double hq = std::pow(beta, -q);
    double hg = window_A * std::sqrt(sigma * std::log(sigma));
    r.h_cut = static_cast<long long>(std::ceil(std::min(hq, hg)));
    if (!seq.covers(r.M1, r.M2 + r.h_cut + 1))
        throw validation_error("check_condition2: buffer must cover [M1, M2+h_cut]");
    kahan<double> acc;
    for (long long h = 1; h <= r.h_cut; ++h)
        acc.add(std::pow(1.0 + beta * static_cast<double>(h), -p) *
                s_star(seq, r.M1, r.M2, h));
    r.lhs = acc.value();
    r.rhs = beta * sigma;
    r.ratio = r.lhs / r.rhs;
    return r;
}

// ---------------------------------------------------------------------------
// Plateau test function
// ---------------------------------------------------------------------------

namespace {

// C-infinity step: 0 for u<=0, 1 for u>=1.
double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

}  // namespace

TestFunction::TestFunction() {
    // Ramp phi(u) = s(1-u) (1 + A s(1-u) s(u)) on u in (0,1): smooth,
    // vanishing to all orders at u=1, equal to 1 to all orders at u=0.
    // The broad correction term keeps the transform ripple low; A makes
    // int_0^1 phi = 1 so the total mass of g is 1.
    double i_step = integrate_gk([](double u) { return smooth_step(1.0 - u); },
                                 0.0, 1.0, 1e-14, 2000);
    double i_mix = integrate_gk(
        [](double u) {
            double s1 = smooth_step(1.0 - u);
            return s1 * s1 * smooth_step(u);
        },
        0.0, 1.0, 1e-14, 2000);
    hump_amp_ = (1.0 - i_step) / i_mix;
}

double TestFunction::operator()(double x) const {
    double ax = std::abs(x);
    if (ax <= 0.25) return 1.0;
    if (ax >= 0.5) return 0.0;
    double u = 4.0 * (ax - 0.25);
    double s1 = smooth_step(1.0 - u);
    return s1 * (1.0 + hump_amp_ * s1 * smooth_step(u));
}

double TestFunction::fourier(double lambda) const {
    auto f = [&](double x) { return (*this)(x) * std::cos(two_pi * lambda * x); };
    // Even real g: g_hat(lambda) = 2 int_0^{1/2} g cos(2 pi lambda x) dx.
    int pieces = std::max(4, static_cast<int>(std::ceil(std::abs(lambda))));
    kahan<double> acc;
    double h = 0.5 / pieces;
    for (int i = 0; i < pieces; ++i)
        acc.add(integrate_gk(f, i * h, (i + 1) * h, 1e-12 / pieces, 400));
    return 2.0 * acc.value();
}

SpectralConditionReport check_spectral_conditions(
    const SmoothWeight& w, double R, double beta, double q,
    const std::function<double(double, long long)>& eps1,
    const std::function<double(double)>& eps2,
    const std::function<double(double)>& H, const TestFunction& g) {
    auto [nu, sigma] = w.nu_sigma(R);
    double e2 = eps2(beta);
    double hq = std::pow(beta, -q);
    SpectralConditionReport rep;
    auto push = [&](char label, double lhs, double rhs) {
        rep.rows.push_back({label, lhs, rhs, rhs != 0.0 ? lhs / rhs : INFINITY,
                            lhs <= rhs});
    };
    // (a) beta^{-q} <= min(sqrt(sigma), H(nu/2))
    push('a', hq, std::min(std::sqrt(sigma), H(0.5 * nu)));
    // (b) beta^{-(1+2q)} << sigma eps2(beta)
    push('b', std::pow(beta, -(1.0 + 2.0 * q)), sigma * e2);
    // (c) nu sum_{0<=h<=beta^{-q}} eps1(nu/2; h) << beta sigma eps2(beta)
    kahan<double> s1;
    for (long long h = 0; h <= static_cast<long long>(std::floor(hq)); ++h)
        s1.add(eps1(0.5 * nu, h));
    push('c', nu * s1.value(), beta * sigma * e2);
    // (d) sum_{h>beta^{-q}} |g_hat(beta h)| << eps2(beta).  The class-G
    // transform decays faster than any negative power; as in the source
    // arguments the implied constant is dropped, so the bound used is
    // min over P of sum (beta h)^{-P}.  The literal transform tail of the
    // concrete g is reported alongside as a diagnostic.
    long long h0 = static_cast<long long>(std::floor(hq)) + 1;
    double best = INFINITY;
    long long h2 = std::max(h0, static_cast<long long>(std::ceil(2.0 / beta)));
    h2 = std::min(h2, h0 + 2000000ll);
    for (int P = 2; P <= 64; ++P) {
        kahan<double> tail;
        for (long long h = h0; h <= h2; ++h)
            tail.add(std::pow(beta * static_cast<double>(h), -static_cast<double>(P)));
        // Integral bound for the remainder beyond lambda2 = beta (h2 + 1).
        double lam2 = beta * static_cast<double>(h2 + 1);
        tail.add(std::pow(lam2, 1.0 - P) / ((P - 1.0) * beta));
        best = std::min(best, tail.value());
    }
    push('d', best, e2);
    // Diagnostic tail of the concrete transform.  Exact sum when few terms
    // are involved; Riemann approximation of beta^{-1} int |g_hat| when the
    // grid is dense.
    double lam_hi = 40.0;
    long long terms = static_cast<long long>((lam_hi / beta)) - h0 + 1;
    kahan<double> s2;
    if (terms <= 160) {
        for (long long h = h0; beta * static_cast<double>(h) <= lam_hi; ++h)
            s2.add(std::abs(g.fourier(beta * static_cast<double>(h))));
    } else {
        double lam0 = beta * static_cast<double>(h0);
        int n = 160;
        double dl = (lam_hi - lam0) / n;
        for (int i = 0; i < n; ++i)
            s2.add(std::abs(g.fourier(lam0 + (i + 0.5) * dl)) * dl / beta);
    }
    rep.ghat_tail_numeric = s2.value();
    rep.all_pass = std::all_of(rep.rows.begin(), rep.rows.end(),
                               [](const SpectralConditionRow& r) { return r.pass; });
    return rep;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

ChowlaResult chowla_moment_mc(MultiplierKind kind, long long x, double eta,
                              long long h, int trials, std::uint64_t seed,
                              double a, double b, BaseDist base) {
    if (kind != MultiplierKind::rand_mult && kind != MultiplierKind::rand_compl_mult)
        throw validation_error("chowla_moment_mc: kind must be rand_mult or rand_compl_mult");
    if (trials < 1) throw validation_error("chowla_moment_mc: trials must be >= 1");
    if (h < 0) throw validation_error("chowla_moment_mc: h must be >= 0");
    if (!(a > 0.0 && a < 1.0))
        throw validation_error("chowla_moment_mc: declared a must lie in (0,1)");
    if (h > 0) {
        if (!(eta <= 1.0 && eta >= std::pow(static_cast<double>(x), a - 1.0)))
            throw validation_error(
                "chowla_moment_mc: regime violation, need x^{a-1} <= eta <= 1");
        if (static_cast<double>(h) > eta * std::pow(static_cast<double>(x), 1.0 - a))
            throw validation_error(
                "chowla_moment_mc: regime violation, need h <= eta x^{1-a}");
    }
    MultiplierSpec spec;
    spec.kind = kind;
    spec.base = base;
    long long lo = x;
    long long hi = static_cast<long long>(std::floor((1.0 + eta) * static_cast<double>(x)));
    kahan<double> acc;
    for (int t = 0; t < trials; ++t) {
        std::uint64_t trial_seed = hash64(seed, static_cast<std::uint64_t>(t));
        SequenceBuffer buf = generate(spec, lo, hi + h, trial_seed);
        kahan_cplx s;
        for (long long k = lo; k < hi; ++k)
            s.add(buf.at(k) * std::conj(buf.at(k + h)));
        acc.add(std::norm(s.value()));
    }
    ChowlaResult r;
    r.mean_sq = acc.value() / trials;
    r.bound = eta * std::pow(static_cast<double>(x), 1.0 + b);
    r.trials = trials;
    r.low_confidence = trials < 50;
    return r;
}

double anticoncentration_mc(MultiplierKind kind, int n, double theta, double eps,
                            const std::vector<cplx>& Z_grid, int trials,
                            std::uint64_t seed, const std::vector<double>& coeffs) {
    if (Z_grid.empty()) throw validation_error("anticoncentration_mc: empty Z grid");
    if (n < 1) throw validation_error("anticoncentration_mc: n must be >= 1");
    if (trials < 1) throw validation_error("anticoncentration_mc: trials must be >= 1");
    if (kind != MultiplierKind::iid_gaussian && kind != MultiplierKind::iid_rademacher &&
        kind != MultiplierKind::iid_steinhaus)
        throw validation_error("anticoncentration_mc: kind must be an iid kind");
    if (!coeffs.empty() && static_cast<int>(coeffs.size()) != n)
        throw validation_error("anticoncentration_mc: coeffs size must equal n");
    MultiplierSpec spec;
    spec.kind = kind;
    std::vector<cplx> phases(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double c = coeffs.empty() ? 1.0 : coeffs[static_cast<std::size_t>(k)];
        phases[static_cast<std::size_t>(k)] =
            c * unit_phase_prod(static_cast<double>(k), theta);
    }
    std::vector<long long> hits(Z_grid.size(), 0);
    for (int t = 0; t < trials; ++t) {
        std::uint64_t trial_seed = hash64(seed, static_cast<std::uint64_t>(t));
        kahan_cplx s;
        for (int k = 0; k < n; ++k)
            s.add(multiplier_value(spec, trial_seed, k) *
                  phases[static_cast<std::size_t>(k)]);
        cplx v = s.value();
        for (std::size_t z = 0; z < Z_grid.size(); ++z)
            if (std::abs(v - Z_grid[z]) < eps) ++hits[z];
    }
    long long best = *std::max_element(hits.begin(), hits.end());
    return static_cast<double>(best) / static_cast<double>(trials);
}

}  // namespace zerolab
