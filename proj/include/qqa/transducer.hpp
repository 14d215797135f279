#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qqa/linrep.hpp"
#include "qqa/numeric.hpp"

namespace qqa {

// Complete deterministic transducer reading base-q digits least significant
// first. Every state has exactly one transition per input digit and a final
// output added when the input ends.
struct Transducer {
    struct Transition {
        std::size_t next = 0;
        Rational output;
        bool operator==(const Transition&) const = default;
    };

    unsigned base = 2;
    std::size_t states = 0;
    std::size_t initial = 0;
    std::vector<std::vector<Transition>> transitions;  // [state][digit]
    std::vector<Rational> final_outputs;

    void validate() const;              // completeness/determinism shape checks
    bool connected() const;             // every state reachable from initial
    bool operator==(const Transducer&) const = default;
};

// Sum of the transition outputs along the path of n's digits (least
// significant first) from the initial state, plus the final output of the
// state reached. n = 0 reads the empty input.
Rational output_sum(const Transducer& t, const Integer& n);

// Same value through the vector recursion b(qn + eps) = N_eps b(n) + delta_eps.
Rational output_sum_via_recursion(const Transducer& t, const Integer& n);

// Report for the sufficient quasiadditivity test with parameter r:
//   (1) the input word 0^r drives every state to the initial state,
//   (2) for every state the output sum along its 0^r path equals its final
//       output,
//   (3) per state: final_output(s) = output(s --0--> s') + final_output(s').
// All three passing implies the output sum satisfies the additive joining
// identity with parameter r.
struct ResetReport {
    bool has_reset = false;        // 0^r drives every state to one common state
    std::size_t target = 0;        // that common state when has_reset
    std::vector<Rational> reset_output_sums;  // per state, along its 0^r path
    bool condition1 = false;
    bool condition2 = false;
    bool condition3 = false;
    bool pass() const { return condition1 && condition2 && condition3; }
};

ResetReport check_reset_condition(const Transducer& t, unsigned r);

// Block-matrix construction of a linear representation of the output sum;
// dimension 2m+1 for m states. The result is zero-insensitive by
// construction and evaluates to output_sum on every input.
LinearRepresentation to_linear_representation(const Transducer& t);

// JSON serialization; exact round-trip.
std::string to_json(const Transducer& t);
Transducer transducer_from_json(const std::string& text);
Transducer load_transducer(const std::string& path);
void save_transducer(const Transducer& t, const std::string& path);

} // namespace qqa
