#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "qqa/numeric.hpp"

namespace qqa {

// Deterministic random substream addressed by (seed, index). Every sample of
// a Monte Carlo run owns its index, so results are reproducible and
// independent of worker scheduling: stream contents depend only on the pair.
// Big-integer draws come from a xoshiro256** word stream; the cheap state
// makes per-sample streams affordable.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_word();

    // uniform on [0, q^k), by digits
    Integer uniform_digits(unsigned q, unsigned k);
    // uniform on [0, bound), rejection sampling from the next power of q
    Integer uniform_below(unsigned q, const Integer& bound);

    double uniform01();
    double gaussian();

private:
    std::array<std::uint64_t, 4> state_;
    std::mt19937_64 small_;
};

} // namespace qqa
