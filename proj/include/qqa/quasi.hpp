#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qqa/catalog.hpp"
#include "qqa/numeric.hpp"

namespace qqa {

// Split of the base-q expansion into blocks, a break being inserted after
// each maximal run of r or more zeros (left to right). Concatenating the
// blocks msb-first reproduces the expansion; the reduced values strip every
// factor of q from the block values.
struct SplitDecomposition {
    Integer n;
    unsigned base = 2;
    unsigned parameter = 1;
    std::vector<std::vector<int>> blocks;  // msb-first digit segments
    std::vector<Integer> parts;            // block values n_i
    std::vector<Integer> reduced;           // m_i, not divisible by q

    std::vector<int> rejoin() const;  // concatenation of the blocks
};

// r = 0 returns the trivial single-block split.
SplitDecomposition split(const Integer& n, unsigned q, unsigned r);

// Sum (additive) or product (multiplicative) of f over the reduced parts of
// split(n, f.base, f.parameter).
Rational split_evaluate(const ArithmeticFunction& f, const Integer& n);

struct Counterexample {
    Integer a, b;
    unsigned k = 0;
    Rational joint, combined;  // f(q^{k+r} a + b) vs f(a) (+ or *) f(b)
};

struct Verdict {
    bool passed = true;
    unsigned long trials = 0;
    std::optional<Counterexample> counterexample;
};

// Samples random (a, b, k) with b < q^k and checks the joining identity of
// f's kind with the given parameter exactly. Deterministic for a fixed seed.
Verdict verify_definition(const ArithmeticFunction& f, unsigned r, unsigned long trials, std::uint64_t seed);

// Exhaustive search for a violation with a, b < q^digits and k <= k_max.
std::optional<Counterexample> find_counterexample(const ArithmeticFunction& f, unsigned r,
                                                  unsigned digits = 6, unsigned k_max = 6);

// g(n) = c^{f(n)} for additive integer-valued f; multiplicative with the same
// parameter. c must be a positive rational.
ArithmeticFunction exp_transform(const ArithmeticFunction& f, const Rational& c);

// f(n) = log_c g(n) for positive multiplicative g whose values are exact
// powers of c; additive with the same parameter.
ArithmeticFunction log_transform(const ArithmeticFunction& g, const Rational& c);

// alpha f + beta g for additive f, g over the same base; the parameter is the
// maximum of the two.
ArithmeticFunction linear_combination(const ArithmeticFunction& f, const ArithmeticFunction& g,
                                      const Rational& alpha, const Rational& beta);

} // namespace qqa
