#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qqa/digits.hpp"
#include "qqa/linrep.hpp"
#include "qqa/numeric.hpp"
#include "qqa/transducer.hpp"

namespace qqa {

enum class GrowthClass { logarithmic, polynomial };

// A named arithmetic function together with its claimed joining structure
// (additive or multiplicative with parameter r) and, when available, an exact
// finite-state evaluator.
struct ArithmeticFunction {
    std::string name;
    unsigned base = 2;
    Kind kind = Kind::additive;
    unsigned parameter = 0;  // minimal r making the joining identity hold
    GrowthClass growth = GrowthClass::logarithmic;
    std::function<Rational(const Integer&)> evaluator;
    std::optional<LinearRepresentation> representation;
    std::optional<Transducer> transducer;

    Rational operator()(const Integer& n) const { return evaluator(n); }
};

// s_i for i >= 1, positive, with declared growth bound s_i <= scale * ratio^i
// (used only for truncation tail bounds; not verified).
struct BaseSequence {
    std::string name;
    std::function<Rational(unsigned)> value;
    double growth_scale = 1.0;
    double growth_ratio = 2.0;
};

// Number of optimal {0,1,-1}-representations of n, via the five-sequence
// recursion carried as the pair (u(n), u(n+1)).
Integer r_opt(const Integer& n);

// The full vector (u_1, ..., u_5)(n) of that recursion; r_opt(n) is its first
// entry.
std::array<Integer, 5> r_opt_profile(const Integer& n);

// (2^{i+2} - (-1)^i) / 3
Integer jacobsthal(unsigned i);
BaseSequence jacobsthal_sequence();

// prod of s_i over the multiset of 1-run lengths of n; 1 for n = 0
Rational run_length_transform(const BaseSequence& s, const Integer& n);

// Minimal r for which the block count c_B satisfies the additive joining
// identity: 1 + the longest all-zero run strictly inside B (0 when B has a
// single digit). Verified empirically by the definition suite.
unsigned block_count_parameter(const Block& b);

Transducer make_h_naf_transducer();
Transducer make_block_count_transducer(const Block& b);
Transducer make_sum_of_digits_transducer(unsigned q);
Transducer make_zero_transducer(unsigned q);

LinearRepresentation make_r_opt_representation();              // 6-dim, minimal
LinearRepresentation make_h_naf_representation();              // 4-dim, minimal
LinearRepresentation make_pow2_sum_representation();           // 1-dim, minimal
LinearRepresentation make_pow2_sum_nonminimal_representation();// 2-dim

ArithmeticFunction make_sum_of_digits(unsigned q);
ArithmeticFunction make_block_count_function(const Block& b);
ArithmeticFunction make_run_length_transform_function(const BaseSequence& s);

const std::vector<ArithmeticFunction>& catalog_entries();
const ArithmeticFunction& catalog_entry(const std::string& name);  // throws PreconditionError

} // namespace qqa
