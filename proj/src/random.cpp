#include "qqa/random.hpp"

#include <vector>

#include "qqa/errors.hpp"

namespace qqa {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index)
    : small_(mix64(seed ^ mix64(index + 0x51ed2701))) {
    std::uint64_t s = mix64(seed) ^ mix64(mix64(index) + 0x9e3779b97f4a7c15ULL);
    for (auto& word : state_) word = s = mix64(s);
}

std::uint64_t SampleStream::next_word() {
    // xoshiro256**
    std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

Integer SampleStream::uniform_digits(unsigned q, unsigned k) {
    if (q < 2) throw PreconditionError("uniform_digits: base must be >= 2");
    if (k == 0) return 0;
    if ((q & (q - 1)) == 0) {
        unsigned bits_per_digit = 0;
        while ((1u << bits_per_digit) < q) ++bits_per_digit;
        const unsigned long total_bits = static_cast<unsigned long>(bits_per_digit) * k;
        const std::size_t words = (total_bits + 63) / 64;
        std::vector<std::uint64_t> buf(words);
        for (auto& w : buf) w = next_word();
        if (total_bits % 64 != 0) buf.back() &= (~0ULL) >> (64 - total_bits % 64);
        Integer n;
        mpz_import(n.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
        return n;
    }
    // unbiased digits by rejection on 64-bit words
    const std::uint64_t limit = ~0ULL - (~0ULL % q + 1) % q;
    Integer n = 0;
    for (unsigned i = 0; i < k; ++i) {
        std::uint64_t w;
        do {
            w = next_word();
        } while (w > limit);
        n = n * q + static_cast<unsigned long>(w % q);
    }
    return n;
}

Integer SampleStream::uniform_below(unsigned q, const Integer& bound) {
    if (bound <= 0) throw PreconditionError("uniform_below: bound must be positive");
    unsigned k = digit_length(bound - 1, q);
    if (k == 0) return 0;
    for (;;) {
        Integer candidate = uniform_digits(q, k);
        if (candidate < bound) return candidate;
    }
}

double SampleStream::uniform01() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(small_);
}

double SampleStream::gaussian() {
    return std::normal_distribution<double>(0.0, 1.0)(small_);
}

} // namespace qqa
