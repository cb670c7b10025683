#include "zerolab/sequences.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

namespace zerolab {

namespace {

constexpr std::uint32_t kMagic = 0x5A4C5351;  // "ZLSQ"
constexpr std::uint32_t kVersion = 1;
constexpr long long kMaxRange = 1ll << 31;

// Primes up to n by a plain sieve (n stays <= ~5e4 for range generation,
// <= 1e6 for Euler products elsewhere).
std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        ps.push_back(p);
        for (std::uint64_t q = static_cast<std::uint64_t>(p) * p; q <= n; q += p)
            comp[static_cast<std::size_t>(q)] = true;
    }
    return ps;
}

cplx base_draw(BaseDist base, std::uint64_t bits) {
    if (base == BaseDist::rademacher) return {(bits & 1) ? 1.0 : -1.0, 0.0};
    return unit_phase(u01(bits));  // steinhaus
}

cplx base_power(BaseDist base, std::uint64_t bits, std::uint64_t e) {
    if (base == BaseDist::rademacher) {
        bool neg = (bits & 1) == 0 && (e & 1);
        return {neg ? -1.0 : 1.0, 0.0};
    }
    return unit_phase(frac(static_cast<double>(e) * u01(bits)));
}

cplx gaussian_draw(std::uint64_t seed, std::uint64_t n) {
    // Standard complex normal, E|xi|^2 = 1: radius^2 ~ Exp(1), phase uniform.
    double u = u01(hash64(seed, 2 * n));
    double v = u01(hash64(seed, 2 * n + 1));
    double r = std::sqrt(-std::log1p(-u));
    return r * unit_phase(v);
}

// Multiplicative values over [n0, n1) by a windowed factor sieve.
void fill_multiplicative(SequenceBuffer& buf) {
    const long long n0 = buf.n0, n1 = buf.n1;
    const bool completely = buf.spec.kind == MultiplierKind::rand_compl_mult;
    std::vector<std::uint64_t> rem(static_cast<std::size_t>(n1 - n0));
    for (long long n = n0; n < n1; ++n) {
        rem[static_cast<std::size_t>(n - n0)] = static_cast<std::uint64_t>(n);
        buf.values[static_cast<std::size_t>(n - n0)] = cplx{1.0, 0.0};
    }
    auto limit = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(n1)) + 2);
    for (std::uint32_t p : primes_up_to(limit)) {
        long long start = ((n0 + p - 1) / p) * p;
        if (start < static_cast<long long>(p)) start = p;
        std::uint64_t xbits = hash64(buf.seed, p);
        for (long long n = start; n < n1; n += p) {
            auto i = static_cast<std::size_t>(n - n0);
            std::uint64_t e = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++e;
            }
            if (!completely && e >= 2) {
                buf.values[i] = 0.0;
            } else if (buf.values[i] != cplx{0.0, 0.0}) {
                buf.values[i] *= completely ? base_power(buf.spec.base, xbits, e)
                                            : base_draw(buf.spec.base, xbits);
            }
        }
    }
    for (long long n = std::max(n0, 2ll); n < n1; ++n) {
        auto i = static_cast<std::size_t>(n - n0);
        if (rem[i] > 1 && buf.values[i] != cplx{0.0, 0.0})
            buf.values[i] *= base_draw(buf.spec.base, hash64(buf.seed, rem[i]));
    }
    if (n0 == 0) buf.values[0] = 0.0;  // xi(0) = 0 (Moebius convention)
}

void fill_squarefree(SequenceBuffer& buf) {
    const long long n0 = buf.n0, n1 = buf.n1;
    for (long long n = n0; n < n1; ++n)
        buf.values[static_cast<std::size_t>(n - n0)] = cplx{1.0, 0.0};
    auto limit = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(n1)) + 2);
    for (std::uint32_t p : primes_up_to(limit)) {
        auto p2 = static_cast<long long>(p) * p;
        long long start = ((n0 + p2 - 1) / p2) * p2;
        if (start < p2) start = p2;
        for (long long n = start; n < n1; n += p2)
            buf.values[static_cast<std::size_t>(n - n0)] = 0.0;
    }
    if (n0 == 0) buf.values[0] = 0.0;
}

template <typename T>
void put_le(std::ostream& os, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(b, b + sizeof(T));
    os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    unsigned char b[sizeof(T)];
    is.read(reinterpret_cast<char*>(b), sizeof(T));
    if (!is) throw validation_error("sequence file: truncated");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(b, b + sizeof(T));
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

}  // namespace

bool MultiplierSpec::deterministic() const {
    switch (kind) {
        case MultiplierKind::quadratic:
        case MultiplierKind::grs:
        case MultiplierKind::squarefree:
        case MultiplierKind::thue_morse:
        case MultiplierKind::constant:
            return true;
        default:
            return false;
    }
}

std::string MultiplierSpec::name() const {
    switch (kind) {
        case MultiplierKind::iid_gaussian: return "iid_gaussian";
        case MultiplierKind::iid_rademacher: return "iid_rademacher";
        case MultiplierKind::iid_steinhaus: return "iid_steinhaus";
        case MultiplierKind::quadratic: return "quadratic";
        case MultiplierKind::rand_mult: return "rand_mult";
        case MultiplierKind::rand_compl_mult: return "rand_compl_mult";
        case MultiplierKind::grs: return "grs";
        case MultiplierKind::squarefree: return "squarefree";
        case MultiplierKind::thue_morse: return "thue_morse";
        case MultiplierKind::constant: return "constant";
    }
    return "unknown";
}

MultiplierKind multiplier_kind_from_name(const std::string& name) {
    for (std::uint32_t k = 0; k <= 9; ++k) {
        MultiplierSpec s;
        s.kind = static_cast<MultiplierKind>(k);
        if (s.name() == name) return s.kind;
    }
    throw validation_error("unknown multiplier kind: " + name);
}

int grs_value(std::uint64_t n) {
    return (std::popcount(n & (n >> 1)) & 1) ? -1 : 1;
}

int tm_value(std::uint64_t n) { return (std::popcount(n) & 1) ? -1 : 1; }

int sqfree_value(std::uint64_t n) {
    if (n == 0) throw validation_error("sqfree_value: n must be >= 1");
    if (n % 4 == 0) return 0;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % (p * p) == 0) return 0;
        while (n % p == 0) n /= p;
    }
    return 1;
}

double quad_phase_turns(double alpha, std::uint64_t n) {
    double nd = static_cast<double>(n);
    dd n2 = two_prod(nd, nd);                 // exact split of n^2
    dd prod = dd_mul(n2, alpha);
    return dd_frac(prod);
}

cplx quad_phase(double alpha, std::uint64_t n) {
    return unit_phase(quad_phase_turns(alpha, n));
}

cplx multiplier_value(const MultiplierSpec& spec, std::uint64_t seed, long long n) {
    auto un = static_cast<std::uint64_t>(n);
    switch (spec.kind) {
        case MultiplierKind::iid_gaussian: return gaussian_draw(seed, un);
        case MultiplierKind::iid_rademacher:
            return {(hash64(seed, un) & 1) ? 1.0 : -1.0, 0.0};
        case MultiplierKind::iid_steinhaus:
            return unit_phase(u01(hash64(seed, un)));
        case MultiplierKind::quadratic: return quad_phase(spec.alpha, un);
        case MultiplierKind::grs: return {static_cast<double>(grs_value(un)), 0.0};
        case MultiplierKind::thue_morse:
            return {static_cast<double>(tm_value(un)), 0.0};
        case MultiplierKind::squarefree:
            return {n == 0 ? 0.0 : static_cast<double>(sqfree_value(un)), 0.0};
        case MultiplierKind::constant: return {1.0, 0.0};
        case MultiplierKind::rand_mult:
        case MultiplierKind::rand_compl_mult: {
            SequenceBuffer one = generate(spec, n, n + 1, seed);
            return one.values[0];
        }
    }
    throw validation_error("multiplier_value: unknown kind");
}

SequenceBuffer generate(const MultiplierSpec& spec, long long n0, long long n1,
                        std::uint64_t seed) {
    if (n0 < 0 || n1 <= n0)
        throw validation_error("generate: need 0 <= n0 < n1");
    if (n1 - n0 > kMaxRange)
        throw capacity_error("generate: range exceeds 2^31 values");
    SequenceBuffer buf;
    buf.spec = spec;
    buf.n0 = n0;
    buf.n1 = n1;
    buf.seed = spec.deterministic() ? 0 : seed;
    buf.values.resize(static_cast<std::size_t>(n1 - n0));

    switch (spec.kind) {
        case MultiplierKind::rand_mult:
        case MultiplierKind::rand_compl_mult:
            fill_multiplicative(buf);
            break;
        case MultiplierKind::squarefree:
            fill_squarefree(buf);
            break;
        default:
            for (long long n = n0; n < n1; ++n)
                buf.values[static_cast<std::size_t>(n - n0)] =
                    multiplier_value(spec, buf.seed, n);
            break;
    }
    return buf;
}

void write_binary(const SequenceBuffer& buf, std::ostream& os) {
    put_le(os, kMagic);
    put_le(os, kVersion);
    put_le(os, static_cast<std::uint32_t>(buf.spec.kind));
    put_le(os, static_cast<std::uint32_t>(buf.spec.base));
    put_le(os, buf.spec.alpha);
    put_le(os, static_cast<std::int64_t>(buf.n0));
    put_le(os, static_cast<std::int64_t>(buf.n1));
    put_le(os, buf.seed);
    for (const cplx& z : buf.values) {
        put_le(os, static_cast<float>(z.real()));
        put_le(os, static_cast<float>(z.imag()));
    }
}

SequenceBuffer read_binary(std::istream& is) {
    if (get_le<std::uint32_t>(is) != kMagic)
        throw validation_error("sequence file: bad magic");
    if (get_le<std::uint32_t>(is) != kVersion)
        throw validation_error("sequence file: unsupported version");
    SequenceBuffer buf;
    buf.spec.kind = static_cast<MultiplierKind>(get_le<std::uint32_t>(is));
    buf.spec.base = static_cast<BaseDist>(get_le<std::uint32_t>(is));
    buf.spec.alpha = get_le<double>(is);
    buf.n0 = get_le<std::int64_t>(is);
    buf.n1 = get_le<std::int64_t>(is);
    buf.seed = get_le<std::uint64_t>(is);
    if (buf.n1 <= buf.n0 || buf.n1 - buf.n0 > kMaxRange)
        throw validation_error("sequence file: bad range");
    buf.values.resize(static_cast<std::size_t>(buf.n1 - buf.n0));
    for (cplx& z : buf.values) {
        float re = get_le<float>(is);
        float im = get_le<float>(is);
        z = {static_cast<double>(re), static_cast<double>(im)};
    }
    return buf;
}

void write_csv(const SequenceBuffer& buf, std::ostream& os) {
    os << "n,re,im\n";
    char line[96];
    for (long long n = buf.n0; n < buf.n1; ++n) {
        cplx z = buf.at(n);
        std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g\n", n, z.real(),
                      z.imag());
        os << line;
    }
}

}  // namespace zerolab
