#include "qqa/quasi.hpp"

#include <cmath>

#include "qqa/errors.hpp"
#include "qqa/random.hpp"

namespace qqa {

std::vector<int> SplitDecomposition::rejoin() const {
    std::vector<int> all;
    for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
    return all;
}

SplitDecomposition split(const Integer& n, unsigned q, unsigned r) {
    if (n < 0) throw PreconditionError("split: negative argument");
    SplitDecomposition d;
    d.n = n;
    d.base = q;
    d.parameter = r;
    auto msb = to_digits(n, q).msb_first();
    if (msb.empty()) return d;
    if (r == 0) {
        d.blocks.push_back(msb);
    } else {
        std::size_t start = 0;
        std::size_t i = 0;
        while (i < msb.size()) {
            if (msb[i] != 0) { ++i; continue; }
            std::size_t run = 0;
            while (i + run < msb.size() && msb[i + run] == 0) ++run;
            if (run >= r) {
                // break after the zero run
                d.blocks.emplace_back(msb.begin() + static_cast<long>(start),
                                      msb.begin() + static_cast<long>(i + run));
                start = i + run;
            }
            i += run;
        }
        if (start < msb.size())
            d.blocks.emplace_back(msb.begin() + static_cast<long>(start), msb.end());
    }
    for (const auto& block : d.blocks) {
        Integer part = value_of_msb_digits(block, q);
        d.parts.push_back(part);
        Integer reduced = part;
        while (reduced != 0 && mpz_divisible_ui_p(reduced.get_mpz_t(), q)) reduced /= q;
        d.reduced.push_back(reduced);
    }
    return d;
}

Rational split_evaluate(const ArithmeticFunction& f, const Integer& n) {
    SplitDecomposition d = split(n, f.base, f.parameter);
    Rational acc = f.kind == Kind::additive ? 0 : 1;
    for (const auto& m : d.reduced) {
        if (f.kind == Kind::additive)
            acc += f.evaluator(m);
        else
            acc *= f.evaluator(m);
    }
    return acc;
}

namespace {

bool identity_holds(const ArithmeticFunction& f, unsigned r, const Integer& a, const Integer& b,
                    unsigned k, Counterexample& cx) {
    Integer n = a * ipow(static_cast<unsigned long>(f.base), k + r) + b;
    Rational joint = f.evaluator(n);
    Rational combined;
    if (f.kind == Kind::additive)
        combined = f.evaluator(a) + f.evaluator(b);
    else
        combined = f.evaluator(a) * f.evaluator(b);
    if (joint == combined) return true;
    cx = {a, b, k, joint, combined};
    return false;
}

} // namespace

Verdict verify_definition(const ArithmeticFunction& f, unsigned r, unsigned long trials, std::uint64_t seed) {
    Verdict v;
    v.trials = trials;
    SampleStream rng(seed, 0);
    for (unsigned long i = 0; i < trials; ++i) {
        // k uniform in [1, 48], a uniform in [0, 2^48), b uniform in [0, q^k)
        unsigned k = 1 + static_cast<unsigned>(rng.uniform_below(2, Integer(48)).get_ui());
        Integer a = rng.uniform_digits(2, 48);
        Integer b = rng.uniform_digits(f.base, k);
        Counterexample cx;
        if (!identity_holds(f, r, a, b, k, cx)) {
            v.passed = false;
            v.counterexample = cx;
            v.trials = i + 1;
            return v;
        }
    }
    return v;
}

std::optional<Counterexample> find_counterexample(const ArithmeticFunction& f, unsigned r,
                                                  unsigned digits, unsigned k_max) {
    Integer limit = ipow(static_cast<unsigned long>(f.base), digits);
    for (unsigned k = 1; k <= k_max; ++k) {
        Integer bk = ipow(static_cast<unsigned long>(f.base), k);
        for (Integer a = 0; a < limit; ++a) {
            for (Integer b = 0; b < bk && b < limit; ++b) {
                Counterexample cx;
                if (!identity_holds(f, r, a, b, k, cx)) return cx;
            }
        }
    }
    return std::nullopt;
}

ArithmeticFunction exp_transform(const ArithmeticFunction& f, const Rational& c) {
    if (f.kind != Kind::additive) throw PreconditionError("exp_transform: additive input required");
    if (c <= 0) throw PreconditionError("exp_transform: base must be positive");
    ArithmeticFunction g;
    g.name = "exp" + format_rational(c) + "_" + f.name;
    g.base = f.base;
    g.kind = Kind::multiplicative;
    g.parameter = f.parameter;
    g.growth = GrowthClass::polynomial;
    auto inner = f.evaluator;
    g.evaluator = [inner, c](const Integer& n) {
        Rational e = inner(n);
        if (!is_integer(e)) throw MathError("exp_transform: non-integer exponent at n = " + n.get_str());
        Integer k = rational_to_integer(e);
        if (!k.fits_slong_p()) throw MathError("exp_transform: exponent out of range");
        return rpow(c, k.get_si());
    };
    return g;
}

ArithmeticFunction log_transform(const ArithmeticFunction& g, const Rational& c) {
    if (g.kind != Kind::multiplicative) throw PreconditionError("log_transform: multiplicative input required");
    if (c <= 0 || c == 1) throw PreconditionError("log_transform: base must be positive and != 1");
    ArithmeticFunction f;
    f.name = "log" + format_rational(c) + "_" + g.name;
    f.base = g.base;
    f.kind = Kind::additive;
    f.parameter = g.parameter;
    f.growth = GrowthClass::logarithmic;
    auto inner = g.evaluator;
    f.evaluator = [inner, c](const Integer& n) {
        Rational value = inner(n);
        if (value <= 0) throw MathError("log_transform: nonpositive value at n = " + n.get_str());
        // exact discrete logarithm: value must be c^k for an integer k
        double estimate = log_to_double(value) / log_to_double(c);
        long k = std::lround(estimate);
        for (long cand : {k, k - 1, k + 1})
            if (rpow(c, cand) == value) return Rational(cand);
        throw MathError("log_transform: value at n = " + n.get_str() + " is not an exact power of " + format_rational(c));
    };
    return f;
}

ArithmeticFunction linear_combination(const ArithmeticFunction& f, const ArithmeticFunction& g,
                                      const Rational& alpha, const Rational& beta) {
    if (f.kind != Kind::additive || g.kind != Kind::additive)
        throw PreconditionError("linear_combination: both functions must be additive");
    if (f.base != g.base) throw PreconditionError("linear_combination: mismatched bases");
    ArithmeticFunction h;
    h.name = f.name + "+" + g.name;
    h.base = f.base;
    h.kind = Kind::additive;
    h.parameter = std::max(f.parameter, g.parameter);
    h.growth = GrowthClass::logarithmic;
    auto fe = f.evaluator, ge = g.evaluator;
    h.evaluator = [fe, ge, alpha, beta](const Integer& n) -> Rational {
        return alpha * fe(n) + beta * ge(n);
    };
    return h;
}

} // namespace qqa
