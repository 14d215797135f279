#pragma once

// Brute-force oracles kept independent of the library's computation paths.

#include <functional>
#include <vector>

#include "qqa/numeric.hpp"

namespace oracles {

// Enumerates every {-1,0,1} digit string of the given length and tabulates,
// per represented value in [0, value_limit), the minimum Hamming weight and
// the number of strings attaining it. Fixed-length enumeration counts each
// representation exactly once (shorter ones are padded with leading zeros).
struct SignedRepTable {
    std::vector<int> min_weight;     // -1 when no representation was seen
    std::vector<long> optimal_count;
};

inline SignedRepTable build_signed_rep_table(long value_limit, unsigned length) {
    SignedRepTable t;
    t.min_weight.assign(static_cast<std::size_t>(value_limit), -1);
    t.optimal_count.assign(static_cast<std::size_t>(value_limit), 0);
    std::function<void(unsigned, long, long, int)> rec = [&](unsigned pos, long value, long place, int weight) {
        if (pos == length) {
            if (value < 0 || value >= value_limit) return;
            auto idx = static_cast<std::size_t>(value);
            if (t.min_weight[idx] < 0 || weight < t.min_weight[idx]) {
                t.min_weight[idx] = weight;
                t.optimal_count[idx] = 1;
            } else if (weight == t.min_weight[idx]) {
                ++t.optimal_count[idx];
            }
            return;
        }
        rec(pos + 1, value, place * 2, weight);
        rec(pos + 1, value + place, place * 2, weight + 1);
        rec(pos + 1, value - place, place * 2, weight + 1);
    };
    rec(0, 0, 1, 0);
    return t;
}

} // namespace oracles
