#pragma once

#include <stdexcept>

namespace qqa {

// A caller violated a documented precondition (e.g. non-minimal representation
// passed to the multiplicative classifier).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The computation itself failed (singular system, missing fixpoint, pole, ...).
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qqa
