#include "qqa/numeric.hpp"

#include <cmath>
#include <stdexcept>

#include "qqa/errors.hpp"

namespace qqa {

Integer ipow(unsigned long base, unsigned long exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational rpow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw MathError("rpow: zero base with negative exponent");
    unsigned long e = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    Integer num = ipow(Integer(base.get_num()), e);
    Integer den = ipow(Integer(base.get_den()), e);
    return exp < 0 ? make_rational(den, num) : make_rational(num, den);
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw MathError("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& r) {
    return r.get_den() == 1;
}

Integer rational_to_integer(const Rational& r) {
    if (!is_integer(r)) throw MathError("rational_to_integer: " + format_rational(r) + " is not an integer");
    return Integer(r.get_num());
}

double to_double(const Rational& r) {
    return mpq_get_d(r.get_mpq_t());
}

double log_to_double(const Integer& n) {
    if (n <= 0) throw MathError("log_to_double: nonpositive argument");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * M_LN2;
}

double log_to_double(const Rational& r) {
    if (r <= 0) throw MathError("log_to_double: nonpositive argument");
    return log_to_double(Integer(r.get_num())) - log_to_double(Integer(r.get_den()));
}

std::string format_rational(const Rational& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(s));
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw MathError("parse_rational: cannot parse '" + s + "'");
    }
}

unsigned digit_length(const Integer& n, unsigned base) {
    if (n < 0) throw PreconditionError("digit_length: negative argument");
    if (base < 2) throw PreconditionError("digit_length: base must be >= 2");
    if (n == 0) return 0;
    if (base > 62) {  // past the range mpz_sizeinbase accepts
        unsigned len = 0;
        Integer rest = n;
        while (rest != 0) {
            rest /= base;
            ++len;
        }
        return len;
    }
    auto est = mpz_sizeinbase(n.get_mpz_t(), static_cast<int>(base));
    // sizeinbase may overshoot by one for bases that are not powers of two
    if (est > 1 && ipow(static_cast<unsigned long>(base), est - 1) > n) --est;
    return static_cast<unsigned>(est);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace qqa
