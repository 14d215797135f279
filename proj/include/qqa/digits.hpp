#pragma once

#include <string>
#include <vector>

#include "qqa/numeric.hpp"

namespace qqa {

// Base-q expansion of a nonnegative integer, least significant digit first.
// 0 is represented by the empty digit sequence; the most significant digit of
// a nonempty expansion is nonzero.
struct DigitString {
    unsigned base = 2;
    std::vector<int> digits;

    Integer value() const;
    std::size_t length() const { return digits.size(); }
    std::vector<int> msb_first() const { return {digits.rbegin(), digits.rend()}; }

    bool operator==(const DigitString&) const = default;
};

DigitString to_digits(const Integer& n, unsigned base);
Integer value_of_msb_digits(const std::vector<int>& msb, unsigned base);

// Expansion over {-1, 0, 1}, least significant digit first.
struct SignedDigitString {
    std::vector<int> digits;

    Integer value() const;
    std::size_t weight() const;       // number of nonzero digits
    bool nonadjacent() const;         // no two adjacent nonzero digits
    std::string to_string() const;    // msb first, '-' marks a -1 digit

    bool operator==(const SignedDigitString&) const = default;
};

// Digit block, most significant digit first; must not be all zeros.
struct Block {
    Block(unsigned base, std::vector<int> digits_msb_first);

    unsigned base;
    std::vector<int> digits;  // msb first
    std::size_t length() const { return digits.size(); }
    std::string to_string() const;
};

// parses e.g. "0101" (single-character digits, so base <= 10 here)
Block parse_block(const std::string& text, unsigned base);

// Lengths of the maximal blocks of consecutive ones in the binary expansion.
using RunLengthMultiset = std::vector<unsigned>;  // ascending

// Occurrences of the block in the base-q expansion of n, the expansion being
// padded with length(B)-1 zeros on both sides. Finite because B is not the
// all-zero block.
Integer block_count(const Integer& n, const Block& b);

// The unique nonadjacent form of n.
SignedDigitString naf(const Integer& n);

// Hamming weight of the NAF via the recursion
//   h(2n) = h(n), h(4n+1) = h(n)+1, h(4n-1) = h(n)+1, h(0) = 0.
Integer h_naf(const Integer& n);
// Same quantity by counting nonzero digits of naf(n).
Integer naf_weight(const Integer& n);

// Number of maximal runs of identical digits in the binary expansion of n
// (0 for n = 0); equals the number of ones in the Gray code of n.
Integer gray_runs(const Integer& n);
// gray_runs(n) + 1 for odd n: the total number of occurrences of the blocks
// 01 and 10 in the zero-padded binary expansion.
Integer adjusted_gray(const Integer& n);

RunLengthMultiset run_lengths(const Integer& n);

} // namespace qqa
