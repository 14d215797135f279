#include "qqa/catalog.hpp"

#include <array>

#include "qqa/errors.hpp"

namespace qqa {

namespace {

using UVec = std::array<Integer, 5>;

// One digit step of the joint recursion on (u(n), u(n+1)).
void descend(UVec& un, UVec& un1, int bit) {
    //   u(2n)   = (u1, u1, u2, u1, u4)(n)
    //   u(2n+1) = (u2(n) + u4(n+1), u3(n), 0, u5(n+1), 0)
    //   u(2n+2) = (u1, u1, u2, u1, u4)(n+1)
    UVec even = {un[0], un[0], un[1], un[0], un[3]};
    UVec odd = {un[1] + un1[3], un[2], Integer(0), un1[4], Integer(0)};
    if (bit == 0) {
        un = std::move(even);
        un1 = std::move(odd);
    } else {
        UVec next_even = {un1[0], un1[0], un1[1], un1[0], un1[3]};
        un = std::move(odd);
        un1 = std::move(next_even);
    }
}

} // namespace

Integer r_opt(const Integer& n) {
    return r_opt_profile(n)[0];
}

std::array<Integer, 5> r_opt_profile(const Integer& n) {
    if (n < 0) throw PreconditionError("r_opt: negative argument");
    UVec un = {Integer(1), Integer(1), Integer(1), Integer(1), Integer(1)};   // u(0)
    UVec un1 = {Integer(1), Integer(1), Integer(0), Integer(0), Integer(0)};  // u(1)
    for (int bit : to_digits(n, 2).msb_first()) descend(un, un1, bit);
    return un;
}

Integer jacobsthal(unsigned i) {
    if (i == 0) throw PreconditionError("jacobsthal: index must be >= 1");
    Integer p = ipow(2ul, i + 2);
    if (i % 2 == 0) p -= 1; else p += 1;
    return p / 3;
}

BaseSequence jacobsthal_sequence() {
    BaseSequence s;
    s.name = "jacobsthal";
    s.value = [](unsigned i) { return Rational(jacobsthal(i)); };
    s.growth_scale = 4.0;
    s.growth_ratio = 2.0;
    return s;
}

Rational run_length_transform(const BaseSequence& s, const Integer& n) {
    Rational t = 1;
    for (unsigned len : run_lengths(n)) t *= s.value(len);
    return t;
}

unsigned block_count_parameter(const Block& b) {
    const std::size_t len = b.length();
    if (len == 1) return 0;
    // joining with separator 0^j misbehaves exactly when B has an all-zero run
    // of length j with at least one digit on each side (j = 0 always qualifies
    // for len >= 2)
    unsigned worst = 0;
    for (std::size_t s = 1; s + 1 < len; ++s) {
        unsigned j = 0;
        while (s + j + 1 < len && b.digits[s + j] == 0) ++j;  // run starting after position s
        worst = std::max(worst, j);
    }
    return worst + 1;
}

Transducer make_h_naf_transducer() {
    Transducer t;
    t.base = 2;
    t.states = 3;
    t.initial = 0;
    t.transitions = {
        {{0, Rational(0)}, {1, Rational(1)}},
        {{0, Rational(0)}, {2, Rational(0)}},
        {{1, Rational(1)}, {2, Rational(0)}},
    };
    t.final_outputs = {Rational(0), Rational(0), Rational(1)};
    return t;
}

Transducer make_block_count_transducer(const Block& b) {
    const unsigned q = b.base;
    const std::size_t len = b.length();
    const std::size_t window = len - 1;  // most recent digits, newest first
    std::size_t states = 1;
    for (std::size_t i = 0; i < window; ++i) states *= q;

    auto matches = [&](int newest, std::size_t code) {
        // window code encodes (d_{p-1}, ..., d_{p-window}) base q, newest in
        // the low digit; an occurrence ends at position p when
        // (d_p, d_{p-1}, ..., d_{p-len+1}) equals the block msb-first
        if (b.digits[0] != newest) return false;
        std::size_t c = code;
        for (std::size_t i = 1; i < len; ++i) {
            if (b.digits[i] != static_cast<int>(c % q)) return false;
            c /= q;
        }
        return true;
    };

    Transducer t;
    t.base = q;
    t.states = std::max<std::size_t>(states, 1);
    t.initial = 0;  // all-zero window: the expansion is padded below the units digit
    t.transitions.assign(t.states, {});
    t.final_outputs.assign(t.states, Rational(0));
    for (std::size_t code = 0; code < t.states; ++code) {
        t.transitions[code].resize(q);
        for (unsigned digit = 0; digit < q; ++digit) {
            std::size_t next = window == 0 ? 0 : (code * q + digit) % states;
            t.transitions[code][digit] = {next, Rational(matches(static_cast<int>(digit), code) ? 1 : 0)};
        }
        // occurrences completed by the zero padding above the top digit
        Rational fin = 0;
        std::size_t cur = code;
        for (std::size_t i = 0; i < window; ++i) {
            if (matches(0, cur)) fin += 1;
            cur = (cur * q) % states;
        }
        t.final_outputs[code] = fin;
    }
    return t;
}

Transducer make_sum_of_digits_transducer(unsigned q) {
    Transducer t;
    t.base = q;
    t.states = 1;
    t.initial = 0;
    t.transitions.assign(1, {});
    t.transitions[0].resize(q);
    for (unsigned digit = 0; digit < q; ++digit) t.transitions[0][digit] = {0, Rational(digit)};
    t.final_outputs = {Rational(0)};
    return t;
}

Transducer make_zero_transducer(unsigned q) {
    Transducer t;
    t.base = q;
    t.states = 1;
    t.initial = 0;
    t.transitions.assign(1, std::vector<Transducer::Transition>(q, {0, Rational(0)}));
    t.final_outputs = {Rational(0)};
    return t;
}

namespace {

Mat mat_from_ints(std::size_t n, std::initializer_list<int> entries) {
    Mat m(n, n);
    std::size_t k = 0;
    for (int e : entries) m.a[k++] = e;
    return m;
}

Vec vec_from_ints(std::initializer_list<int> entries) {
    Vec v;
    for (int e : entries) v.emplace_back(e);
    return v;
}

} // namespace

LinearRepresentation make_r_opt_representation() {
    LinearRepresentation rep;
    rep.base = 2;
    rep.dim = 6;
    rep.matrices = {
        mat_from_ints(6, {1, 0, 0, 0, 0, 0,
                          1, 0, 0, 0, 0, 0,
                          0, 1, 0, 0, 0, 0,
                          0, 1, 0, 0, 1, 0,
                          0, 0, 0, 0, 0, 1,
                          0, 0, 0, 0, 0, 0}),
        mat_from_ints(6, {0, 1, 0, 0, 1, 0,
                          0, 0, 1, 0, 0, 0,
                          0, 0, 0, 0, 0, 0,
                          0, 0, 0, 1, 0, 0,
                          0, 0, 0, 1, 0, 0,
                          0, 0, 0, 0, 1, 0}),
    };
    rep.u = vec_from_ints({1, 0, 0, 0, 0, 0});
    rep.v = vec_from_ints({1, 1, 1, 1, 0, 0});
    return rep;
}

LinearRepresentation make_h_naf_representation() {
    LinearRepresentation rep;
    rep.base = 2;
    rep.dim = 4;
    rep.matrices = {
        mat_from_ints(4, {1, 0, 0, 0,
                          0, 0, 1, 0,
                          1, 0, 0, 1,
                          0, 0, 0, 1}),
        mat_from_ints(4, {0, 0, 1, 0,
                          0, 1, 0, 0,
                          0, 1, 0, 1,
                          0, 0, 0, 1}),
    };
    rep.u = vec_from_ints({1, 0, 0, 0});
    rep.v = vec_from_ints({0, 1, 1, 1});
    return rep;
}

LinearRepresentation make_pow2_sum_representation() {
    LinearRepresentation rep;
    rep.base = 2;
    rep.dim = 1;
    rep.matrices = {mat_from_ints(1, {1}), mat_from_ints(1, {2})};
    rep.u = vec_from_ints({1});
    rep.v = vec_from_ints({1});
    return rep;
}

LinearRepresentation make_pow2_sum_nonminimal_representation() {
    LinearRepresentation rep;
    rep.base = 2;
    rep.dim = 2;
    rep.matrices = {
        mat_from_ints(2, {1, 13, 0, 2}),
        mat_from_ints(2, {2, 27, 0, 5}),
    };
    rep.u = vec_from_ints({1, 0});
    rep.v = vec_from_ints({1, 0});
    return rep;
}

ArithmeticFunction make_sum_of_digits(unsigned q) {
    ArithmeticFunction f;
    f.name = q == 2 ? "sum_of_digits" : "sum_of_digits_q" + std::to_string(q);
    f.base = q;
    f.kind = Kind::additive;
    f.parameter = 0;
    f.growth = GrowthClass::logarithmic;
    f.evaluator = [q](const Integer& n) {
        Integer s = 0;
        for (int d : to_digits(n, q).digits) s += d;
        return Rational(s);
    };
    f.transducer = make_sum_of_digits_transducer(q);
    return f;
}

ArithmeticFunction make_block_count_function(const Block& b) {
    ArithmeticFunction f;
    f.name = "c_" + b.to_string();
    f.base = b.base;
    f.kind = Kind::additive;
    f.parameter = block_count_parameter(b);
    f.growth = GrowthClass::logarithmic;
    f.evaluator = [b](const Integer& n) { return Rational(block_count(n, b)); };
    f.transducer = make_block_count_transducer(b);
    return f;
}

ArithmeticFunction make_run_length_transform_function(const BaseSequence& s) {
    ArithmeticFunction f;
    f.name = "runlength_" + s.name;
    f.base = 2;
    f.kind = Kind::multiplicative;
    f.parameter = 1;
    f.growth = GrowthClass::polynomial;
    f.evaluator = [s](const Integer& n) { return run_length_transform(s, n); };
    return f;
}

const std::vector<ArithmeticFunction>& catalog_entries() {
    static const std::vector<ArithmeticFunction> entries = [] {
        std::vector<ArithmeticFunction> v;

        v.push_back(make_sum_of_digits(2));

        {
            ArithmeticFunction f;
            f.name = "pow2_sum_of_digits";
            f.base = 2;
            f.kind = Kind::multiplicative;
            f.parameter = 0;
            f.growth = GrowthClass::polynomial;
            f.evaluator = [](const Integer& n) {
                Integer s = 0;
                for (int d : to_digits(n, 2).digits) s += d;
                return Rational(ipow(Integer(2), s.get_ui()));
            };
            f.representation = make_pow2_sum_representation();
            v.push_back(std::move(f));
        }

        v.push_back(make_block_count_function(parse_block("0101", 2)));

        {
            ArithmeticFunction f;
            f.name = "adjusted_gray";
            f.base = 2;
            f.kind = Kind::additive;
            f.parameter = 1;  // a single zero already separates the runs of ones
            f.growth = GrowthClass::logarithmic;
            f.evaluator = [](const Integer& n) { return Rational(adjusted_gray(n)); };
            v.push_back(std::move(f));
        }

        {
            ArithmeticFunction f;
            f.name = "h_naf";
            f.base = 2;
            f.kind = Kind::additive;
            f.parameter = 2;
            f.growth = GrowthClass::logarithmic;
            f.evaluator = [](const Integer& n) { return Rational(h_naf(n)); };
            f.representation = make_h_naf_representation();
            f.transducer = make_h_naf_transducer();
            v.push_back(std::move(f));
        }

        {
            ArithmeticFunction f;
            f.name = "r_opt";
            f.base = 2;
            f.kind = Kind::multiplicative;
            f.parameter = 3;
            f.growth = GrowthClass::polynomial;
            f.evaluator = [](const Integer& n) { return Rational(r_opt(n)); };
            f.representation = make_r_opt_representation();
            v.push_back(std::move(f));
        }

        v.push_back(make_run_length_transform_function(jacobsthal_sequence()));

        return v;
    }();
    return entries;
}

const ArithmeticFunction& catalog_entry(const std::string& name) {
    for (const auto& f : catalog_entries())
        if (f.name == name) return f;
    throw PreconditionError("catalog_entry: unknown function '" + name + "'");
}

} // namespace qqa
