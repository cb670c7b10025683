#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "zerolab/sequences.hpp"

using namespace zerolab;

namespace {

// Recursion oracles, independent of the bit-count implementations.
int grs_recursive(long long n) {
    if (n == 0) return 1;
    if (n % 2 == 0) return grs_recursive(n / 2);
    return ((n / 2) % 2 == 0 ? 1 : -1) * grs_recursive(n / 2);
}

int tm_recursive(long long n) {
    if (n == 0) return 1;
    return (n % 2 == 0 ? 1 : -1) * tm_recursive(n / 2);
}

}  // namespace

TEST_SUITE("sequences") {

TEST_CASE("grs and thue-morse openers match the hand recursion") {
    std::vector<double> grs_expect{1, 1, 1, -1, 1, 1, -1, 1};
    std::vector<double> tm_expect{1, -1, -1, 1, -1, 1, 1, -1};
    SequenceBuffer g = generate({MultiplierKind::grs}, 0, 8, 0);
    SequenceBuffer t = generate({MultiplierKind::thue_morse}, 0, 8, 0);
    for (int i = 0; i < 8; ++i) {
        CHECK(g.values[i].real() == grs_expect[i]);
        CHECK(t.values[i].real() == tm_expect[i]);
    }
    CHECK(grs_value(3) == -1);
    CHECK(tm_value(5) == 1);
    for (long long n = 0; n < 4096; ++n) {
        CHECK(grs_value(n) == grs_recursive(n));
        CHECK(tm_value(n) == tm_recursive(n));
    }
}

TEST_CASE("squarefree indicator") {
    SequenceBuffer s = generate({MultiplierKind::squarefree}, 1, 13, 0);
    std::vector<double> expect{1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0};
    for (int i = 0; i < 12; ++i) CHECK(s.values[i].real() == expect[i]);
    CHECK(sqfree_value(12) == 0);
    CHECK(sqfree_value(1) == 1);
    // Buffer agrees with the pointwise trial division on random indices.
    SequenceBuffer big = generate({MultiplierKind::squarefree}, 0, 200000, 0);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        long long n = 1 + static_cast<long long>(rng() % 199999);
        CHECK(big.at(n).real() == static_cast<double>(sqfree_value(n)));
    }
}

TEST_CASE("square-free density approaches 6/pi^2") {
    const long long X = 1000000;
    SequenceBuffer s = generate({MultiplierKind::squarefree}, 1, X + 1, 0);
    long long cnt = 0;
    for (const cplx& v : s.values) cnt += v.real() > 0.5 ? 1 : 0;
    double dens = static_cast<double>(cnt) / static_cast<double>(X);
    CHECK(std::abs(dens - 6.0 / (pi * pi)) <=
          2.0 / std::sqrt(static_cast<double>(X)));
}

TEST_CASE("constant kind") {
    SequenceBuffer c = generate({MultiplierKind::constant}, 5, 12, 99);
    for (const cplx& v : c.values) CHECK(v == cplx{1.0, 0.0});
    CHECK(c.seed == 0);  // deterministic kinds store seed 0
}

TEST_CASE("quadratic phase sanity and precision") {
    MultiplierSpec q{MultiplierKind::quadratic, 0.25};
    CHECK(multiplier_value(q, 0, 2).real() == doctest::Approx(1.0).epsilon(1e-12));
    MultiplierSpec q2{MultiplierKind::quadratic, 0.5};
    CHECK(multiplier_value(q2, 0, 3).real() == doctest::Approx(-1.0).epsilon(1e-12));
    // 128-bit integer oracle for alpha = double nearest sqrt(2), n = 1e6.
    double alpha = std::sqrt(2.0);
    int e;
    double m = std::frexp(alpha, &e);
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    int shift = 53 - e;
    std::uint64_t n = 1000000;
    unsigned __int128 prod = static_cast<unsigned __int128>(mant) * n * n;
    unsigned __int128 den = static_cast<unsigned __int128>(1) << shift;
    double exact = static_cast<double>(prod % den) / static_cast<double>(den);
    double got = quad_phase_turns(alpha, n);
    double diff = std::abs(got - exact);
    diff = std::min(diff, 1.0 - diff);
    CHECK(diff < std::ldexp(1.0, -40));
}

TEST_CASE("determinism and modulus structure per kind") {
    for (MultiplierKind kind :
         {MultiplierKind::iid_gaussian, MultiplierKind::iid_rademacher,
          MultiplierKind::iid_steinhaus, MultiplierKind::rand_mult,
          MultiplierKind::rand_compl_mult, MultiplierKind::grs,
          MultiplierKind::squarefree, MultiplierKind::thue_morse}) {
        MultiplierSpec spec{kind, std::sqrt(2.0)};
        SequenceBuffer a = generate(spec, 100, 400, 42);
        SequenceBuffer b = generate(spec, 100, 400, 42);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(a.values[i].real() == b.values[i].real());
            CHECK(a.values[i].imag() == b.values[i].imag());
        }
        if (kind != MultiplierKind::iid_gaussian) {
            for (const cplx& v : a.values) {
                double m = std::abs(v);
                CHECK((std::abs(m - 1.0) < 1e-12 || m < 1e-12));
            }
        }
    }
}

TEST_CASE("sub-range generation is window independent") {
    MultiplierSpec spec{MultiplierKind::rand_mult};
    SequenceBuffer whole = generate(spec, 0, 3000, 7);
    SequenceBuffer part = generate(spec, 1000, 2000, 7);
    for (long long n = 1000; n < 2000; ++n) {
        CHECK(whole.at(n).real() == part.at(n).real());
        CHECK(whole.at(n).imag() == part.at(n).imag());
    }
}

TEST_CASE("random multiplicative structure") {
    MultiplierSpec spec{MultiplierKind::rand_mult};
    SequenceBuffer buf = generate(spec, 0, 100000, 3);
    // Vanishes exactly on non-square-free integers.
    SequenceBuffer sf = generate({MultiplierKind::squarefree}, 0, 100000, 0);
    for (long long n = 1; n < 100000; ++n) {
        bool zero = std::abs(buf.at(n)) < 1e-12;
        CHECK(zero == (sf.at(n).real() < 0.5));
    }
    // Multiplicativity on coprime pairs under the same seed.
    MultiplierSpec cm{MultiplierKind::rand_compl_mult};
    SequenceBuffer cbuf = generate(cm, 0, 100000, 3);
    std::mt19937_64 rng(5);
    int done = 0;
    while (done < 1000) {
        long long m = 2 + static_cast<long long>(rng() % 310);
        long long n = 2 + static_cast<long long>(rng() % 310);
        if (std::gcd(m, n) != 1 || m * n >= 100000) continue;
        cplx lhs = cbuf.at(m * n);
        cplx rhs = cbuf.at(m) * cbuf.at(n);
        CHECK(std::abs(lhs - rhs) < 1e-12);
        ++done;
    }
    // Complete multiplicativity at prime powers: xi(p^2) = X_p^2.
    cplx x2 = cbuf.at(2);
    CHECK(std::abs(cbuf.at(4) - x2 * x2) < 1e-12);
    CHECK(std::abs(cbuf.at(8) - x2 * x2 * x2) < 1e-12);
}

TEST_CASE("steinhaus base distribution for rand_compl_mult") {
    MultiplierSpec cm{MultiplierKind::rand_compl_mult, 0.0, BaseDist::steinhaus};
    SequenceBuffer buf = generate(cm, 0, 1000, 9);
    cplx x3 = buf.at(3);
    CHECK(std::abs(std::abs(x3) - 1.0) < 1e-12);
    CHECK(std::abs(buf.at(9) - x3 * x3) < 1e-10);
}

TEST_CASE("gaussian kind has the GEF normalization") {
    SequenceBuffer buf = generate({MultiplierKind::iid_gaussian}, 0, 200000, 12345);
    double s2 = 0.0, sre = 0.0;
    for (const cplx& v : buf.values) {
        s2 += std::norm(v);
        sre += v.real();
    }
    double n = static_cast<double>(buf.values.size());
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));   // E|xi|^2 = 1
    CHECK(std::abs(sre / n) < 0.01);                        // centered
}

TEST_CASE("binary round trip and csv") {
    MultiplierSpec spec{MultiplierKind::quadratic, std::sqrt(2.0)};
    SequenceBuffer buf = generate(spec, 0, 64, 0);
    std::stringstream ss;
    write_binary(buf, ss);
    SequenceBuffer back = read_binary(ss);
    CHECK(back.spec.kind == buf.spec.kind);
    CHECK(back.spec.alpha == buf.spec.alpha);
    CHECK(back.n0 == buf.n0);
    CHECK(back.n1 == buf.n1);
    CHECK(back.seed == buf.seed);
    for (std::size_t i = 0; i < buf.values.size(); ++i)
        CHECK(std::abs(back.values[i] - buf.values[i]) < 1e-6);  // float32 payload
    std::stringstream csv;
    write_csv(buf, csv);
    CHECK(csv.str().substr(0, 8) == "n,re,im\n");
}

TEST_CASE("range validation") {
    CHECK_THROWS_AS(generate({MultiplierKind::constant}, 5, 5, 0), validation_error);
    CHECK_THROWS_AS(generate({MultiplierKind::constant}, -1, 5, 0), validation_error);
}

}  // TEST_SUITE
