#pragma once

// Multiplier sequences xi.  Every random value is a pure function of
// (seed, index) via hash64, so any sub-range regenerates bit-identically
// and windows of different sizes agree.  Deterministic kinds ignore the
// seed (stored as 0).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zerolab/common.hpp"

namespace zerolab {

enum class MultiplierKind : std::uint32_t {
    iid_gaussian = 0,
    iid_rademacher = 1,
    iid_steinhaus = 2,
    quadratic = 3,
    rand_mult = 4,
    rand_compl_mult = 5,
    grs = 6,
    squarefree = 7,
    thue_morse = 8,
    constant = 9,
};

enum class BaseDist : std::uint32_t { rademacher = 0, steinhaus = 1 };

struct MultiplierSpec {
    MultiplierKind kind = MultiplierKind::constant;
    double alpha = 0.0;          // quadratic kind only
    BaseDist base = BaseDist::rademacher;  // rand_* kinds only

    bool deterministic() const;
    std::string name() const;
};

MultiplierKind multiplier_kind_from_name(const std::string& name);

// O(1) bit-count values for the automatic sequences and the square-free
// indicator by trial division (sieve-free spot checks).
int grs_value(std::uint64_t n);      // +1 / -1
int tm_value(std::uint64_t n);       // +1 / -1
int sqfree_value(std::uint64_t n);   // 0 / 1, n >= 1

// e(alpha n^2) with alpha*n^2 reduced mod 1 in double-double arithmetic;
// phase error stays below 2^-40 turns through n = 1e8.
double quad_phase_turns(double alpha, std::uint64_t n);
cplx quad_phase(double alpha, std::uint64_t n);

struct SequenceBuffer {
    MultiplierSpec spec;
    long long n0 = 0;
    long long n1 = 0;
    std::uint64_t seed = 0;
    std::vector<cplx> values;  // values[i] = xi(n0 + i)

    long long size() const { return n1 - n0; }
    bool covers(long long a, long long b) const { return n0 <= a && b <= n1; }
    cplx at(long long n) const { return values[static_cast<std::size_t>(n - n0)]; }
};

SequenceBuffer generate(const MultiplierSpec& spec, long long n0, long long n1,
                        std::uint64_t seed);

// Single multiplier value; agrees with generate() entrywise for every kind.
cplx multiplier_value(const MultiplierSpec& spec, std::uint64_t seed, long long n);

// Binary format: little-endian header {magic, version, kind, base, alpha,
// n0, n1, seed} followed by (re, im) float32 pairs (complex64).
void write_binary(const SequenceBuffer& buf, std::ostream& os);
SequenceBuffer read_binary(std::istream& is);
void write_csv(const SequenceBuffer& buf, std::ostream& os);

}  // namespace zerolab
