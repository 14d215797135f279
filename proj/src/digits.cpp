#include "qqa/digits.hpp"

#include <algorithm>

#include "qqa/errors.hpp"

namespace qqa {

Integer DigitString::value() const {
    Integer v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * base + *it;
    return v;
}

DigitString to_digits(const Integer& n, unsigned base) {
    if (base < 2) throw PreconditionError("to_digits: base must be >= 2");
    if (n < 0) throw PreconditionError("to_digits: negative argument");
    DigitString d;
    d.base = base;
    Integer rest = n;
    while (rest != 0) {
        d.digits.push_back(static_cast<int>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base)));
    }
    return d;
}

Integer value_of_msb_digits(const std::vector<int>& msb, unsigned base) {
    Integer v = 0;
    for (int d : msb) v = v * base + d;
    return v;
}

Integer SignedDigitString::value() const {
    Integer v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * 2 + *it;
    return v;
}

std::size_t SignedDigitString::weight() const {
    std::size_t w = 0;
    for (int d : digits) w += d != 0;
    return w;
}

bool SignedDigitString::nonadjacent() const {
    for (std::size_t i = 0; i + 1 < digits.size(); ++i)
        if (digits[i] != 0 && digits[i + 1] != 0) return false;
    return true;
}

std::string SignedDigitString::to_string() const {
    std::string s;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        s += (*it == -1) ? '-' : static_cast<char>('0' + *it);
    return s;
}

Block::Block(unsigned base_, std::vector<int> digits_msb_first)
    : base(base_), digits(std::move(digits_msb_first)) {
    if (base < 2) throw PreconditionError("Block: base must be >= 2");
    if (digits.empty()) throw PreconditionError("Block: empty block");
    bool nonzero = false;
    for (int d : digits) {
        if (d < 0 || static_cast<unsigned>(d) >= base) throw PreconditionError("Block: digit out of range");
        nonzero |= d != 0;
    }
    if (!nonzero) throw PreconditionError("Block: the all-zero block is rejected");
}

std::string Block::to_string() const {
    std::string s;
    for (int d : digits) s += static_cast<char>('0' + d);
    return s;
}

Block parse_block(const std::string& text, unsigned base) {
    std::vector<int> ds;
    ds.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '9') throw PreconditionError("parse_block: invalid digit character");
        ds.push_back(c - '0');
    }
    return Block(base, std::move(ds));
}

Integer block_count(const Integer& n, const Block& b) {
    const auto len = b.length();
    std::vector<int> padded(len - 1, 0);
    auto msb = to_digits(n, b.base).msb_first();
    padded.insert(padded.end(), msb.begin(), msb.end());
    padded.insert(padded.end(), len - 1, 0);
    if (padded.size() < len) return 0;  // n = 0 and len = 1
    Integer count = 0;
    for (std::size_t i = 0; i + len <= padded.size(); ++i) {
        if (std::equal(b.digits.begin(), b.digits.end(), padded.begin() + static_cast<long>(i)))
            ++count;
    }
    return count;
}

SignedDigitString naf(const Integer& n) {
    if (n < 0) throw PreconditionError("naf: negative argument");
    SignedDigitString s;
    Integer rest = n;
    while (rest != 0) {
        if (mpz_odd_p(rest.get_mpz_t())) {
            // residue mod 4 decides the digit; the complement step keeps the
            // next digit zero
            unsigned long m4 = mpz_fdiv_ui(rest.get_mpz_t(), 4);
            if (m4 == 1) {
                s.digits.push_back(1);
                rest -= 1;
            } else {
                s.digits.push_back(-1);
                rest += 1;
            }
        } else {
            s.digits.push_back(0);
        }
        rest >>= 1;
    }
    return s;
}

Integer h_naf(const Integer& n) {
    if (n < 0) throw PreconditionError("h_naf: negative argument");
    Integer rest = n;
    Integer w = 0;
    while (rest != 0) {
        if (mpz_odd_p(rest.get_mpz_t())) {
            unsigned long m4 = mpz_fdiv_ui(rest.get_mpz_t(), 4);
            if (m4 == 1) rest -= 1; else rest += 1;
            w += 1;
        }
        rest >>= 1;
    }
    return w;
}

Integer naf_weight(const Integer& n) {
    return Integer(static_cast<unsigned long>(naf(n).weight()));
}

Integer gray_runs(const Integer& n) {
    if (n < 0) throw PreconditionError("gray_runs: negative argument");
    auto d = to_digits(n, 2);
    if (d.digits.empty()) return 0;
    Integer runs = 1;
    for (std::size_t i = 0; i + 1 < d.digits.size(); ++i)
        if (d.digits[i] != d.digits[i + 1]) ++runs;
    return runs;
}

Integer adjusted_gray(const Integer& n) {
    Integer r = gray_runs(n);
    if (mpz_odd_p(n.get_mpz_t())) r += 1;
    return r;
}

RunLengthMultiset run_lengths(const Integer& n) {
    if (n < 0) throw PreconditionError("run_lengths: negative argument");
    RunLengthMultiset out;
    auto d = to_digits(n, 2);
    unsigned run = 0;
    for (int digit : d.digits) {
        if (digit == 1) {
            ++run;
        } else if (run > 0) {
            out.push_back(run);
            run = 0;
        }
    }
    if (run > 0) out.push_back(run);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qqa
