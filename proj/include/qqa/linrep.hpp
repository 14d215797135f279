#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qqa/linalg.hpp"
#include "qqa/numeric.hpp"

namespace qqa {

enum class Kind { additive, multiplicative };

// Linear representation (u, (M_i)_{0<=i<q}, v) of a q-regular function:
// f(n) = u^t M_{n_0} M_{n_1} ... M_{n_L} v over the q-ary expansion
// n_L ... n_0 (the least significant digit acts first, next to u).
struct LinearRepresentation {
    unsigned base = 2;
    std::size_t dim = 0;
    Vec u;                     // row vector
    Vec v;                     // column vector
    std::vector<Mat> matrices; // one d x d matrix per digit

    void validate() const;  // shape checks, throws PreconditionError
    bool operator==(const LinearRepresentation&) const = default;
};

Rational evaluate(const LinearRepresentation& rep, const Integer& n);

// M_0 v == v, i.e. leading zeros in the expansion do not change the value.
bool is_zero_insensitive(const LinearRepresentation& rep);

// Iterates v <- M_0 v up to dim+1 times looking for a fixpoint; throws
// MathError when none is reached.
LinearRepresentation stabilize(const LinearRepresentation& rep);

// Basis of a subspace, stored as the raw vectors discovered by closure (in
// deterministic digit order), together with the span for membership tests.
struct SubspaceBasis {
    std::vector<Vec> vectors;
    std::size_t dim() const { return vectors.size(); }
    bool contains(const Vec& x) const;
};

// Smallest U with every u^t prod M in the affine subspace u^t + U^t:
// the minimal right-invariant subspace containing all u^t M_i - u^t.
SubspaceBasis affine_closure_u(const LinearRepresentation& rep);
// Smallest V with every prod M v in v + V (left-invariant closure).
SubspaceBasis affine_closure_v(const LinearRepresentation& rep);

// Two-pass reduction (forward row space, then backward column space) to a
// representation of the same function with minimal dimension. Requires a
// zero-insensitive input; the output is re-checked for zero-insensitivity and
// for pointwise agreement on small arguments (hard error on failure).
LinearRepresentation minimize(const LinearRepresentation& rep);

std::size_t minimal_dimension(const LinearRepresentation& rep);

// Raw matrix condition M_0^r = v u^t; meaningful only for minimal
// zero-insensitive representations but exposed for demonstrating why
// minimality matters.
bool matrix_condition_quasimultiplicative(const LinearRepresentation& rep, unsigned r);

// Characterization tests. The multiplicative test requires a minimal
// zero-insensitive representation and rejects non-minimal input rather than
// silently minimizing. The additive test requires zero-insensitivity only.
bool is_quasimultiplicative(const LinearRepresentation& rep, unsigned r);
bool is_quasiadditive(const LinearRepresentation& rep, unsigned r);

// Least r <= r_max passing the respective test, if any.
std::optional<unsigned> min_parameter(const LinearRepresentation& rep, Kind kind, unsigned r_max = 16);

// JSON serialization; exact round-trip, rationals as integers or "p/q".
std::string to_json(const LinearRepresentation& rep);
LinearRepresentation linrep_from_json(const std::string& text);
LinearRepresentation load_linrep(const std::string& path);
void save_linrep(const LinearRepresentation& rep, const std::string& path);

} // namespace qqa
