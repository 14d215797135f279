#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qqa/errors.hpp"
#include "qqa/quasi.hpp"
#include "qqa/random.hpp"

using namespace qqa;

namespace {

std::vector<std::string> block_strings(const SplitDecomposition& d) {
    std::vector<std::string> out;
    for (const auto& b : d.blocks) {
        std::string s;
        for (int digit : b) s += static_cast<char>('0' + digit);
        out.push_back(s);
    }
    return out;
}

} // namespace

TEST_CASE("splitting at zero runs") {
    auto d = split(314159265, 2, 2);
    CHECK(block_strings(d) == std::vector<std::string>{"100", "101011100", "110110000", "1010000", "1"});
    CHECK(d.parts == std::vector<Integer>{4, 348, 432, 80, 1});
    CHECK(d.reduced == std::vector<Integer>{1, 87, 27, 5, 1});
    CHECK(d.rejoin() == to_digits(314159265, 2).msb_first());

    auto d3 = split(204280974, 2, 3);
    CHECK(d3.reduced == std::vector<Integer>{3, 45, 41, 7});

    auto single = split(5, 2, 2);
    CHECK(single.parts == std::vector<Integer>{5});

    CHECK(split(0, 2, 2).parts.empty());
    CHECK(split(40, 2, 1).parts == std::vector<Integer>{2, 8});  // 10|1000, a break after each zero run
    CHECK(split(40, 2, 2).parts == std::vector<Integer>{40});    // only the trailing run is long enough
    CHECK(split(40, 2, 0).parts == std::vector<Integer>{40});

    // round trip on random arguments; reduced parts never divisible by the base
    SampleStream rng(99, 0);
    for (int i = 0; i < 500; ++i) {
        Integer n = rng.uniform_digits(2, 40);
        for (unsigned r = 1; r <= 3; ++r) {
            auto dec = split(n, 2, r);
            CHECK(dec.rejoin() == to_digits(n, 2).msb_first());
            for (const auto& m : dec.reduced) {
                CHECK(m >= 1);
                CHECK(mpz_odd_p(m.get_mpz_t()));
            }
        }
    }
    for (int i = 0; i < 200; ++i) {
        Integer n = rng.uniform_digits(3, 25);
        auto dec = split(n, 3, 2);
        CHECK(dec.rejoin() == to_digits(n, 3).msb_first());
        for (const auto& m : dec.reduced) CHECK(mpz_divisible_ui_p(m.get_mpz_t(), 3) == 0);
    }
}

TEST_CASE("split evaluation matches direct evaluation") {
    const auto& hnaf = catalog_entry("h_naf");
    CHECK(split_evaluate(hnaf, 314159265) == 11);
    const auto& ropt = catalog_entry("r_opt");
    CHECK(split_evaluate(ropt, 204280974) == 10);

    // the identity holds over the raw parts as well as the reduced ones
    SampleStream parts_rng(13, 0);
    for (int i = 0; i < 200; ++i) {
        Integer n = parts_rng.uniform_digits(2, 44);
        auto dh = split(n, hnaf.base, hnaf.parameter);
        Rational sum = 0;
        for (const auto& p : dh.parts) sum += hnaf.evaluator(p);
        CHECK(sum == hnaf.evaluator(n));
        auto dr = split(n, ropt.base, ropt.parameter);
        Rational prod = 1;
        for (const auto& p : dr.parts) prod *= ropt.evaluator(p);
        CHECK(prod == ropt.evaluator(n));
    }
    for (const auto& f : catalog_entries()) {
        CHECK(split_evaluate(f, 0) == (f.kind == Kind::additive ? Rational(0) : Rational(1)));
        SampleStream rng(7, 0);
        for (int i = 0; i < 500; ++i) {
            Integer n = rng.uniform_digits(2, 48);
            CHECK(split_evaluate(f, n) == f.evaluator(n));
        }
    }
}

TEST_CASE("definition verification") {
    const auto& hnaf = catalog_entry("h_naf");
    CHECK(verify_definition(hnaf, 2, 3000, 42).passed);

    auto cx = find_counterexample(hnaf, 1);
    REQUIRE(cx.has_value());
    // the witness violates the joining identity at parameter 1
    Integer joined = cx->a * ipow(2ul, cx->k + 1) + cx->b;
    CHECK(hnaf.evaluator(joined) != hnaf.evaluator(cx->a) + hnaf.evaluator(cx->b));

    const auto& sod = catalog_entry("sum_of_digits");
    CHECK(verify_definition(sod, 0, 3000, 42).passed);
    CHECK(verify_definition(make_sum_of_digits(3), 0, 3000, 42).passed);
    CHECK(verify_definition(make_block_count_function(parse_block("12", 3)), 1, 2000, 42).passed);

    // a failed sampled run reports the violating triple
    Verdict v = verify_definition(hnaf, 1, 20000, 42);
    if (!v.passed) {
        REQUIRE(v.counterexample.has_value());
        CHECK(v.counterexample->joint != v.counterexample->combined);
    }

    // parameters are upward closed
    for (const auto& f : catalog_entries()) {
        CHECK(verify_definition(f, f.parameter + 1, 400, 11).passed);
        CHECK(verify_definition(f, f.parameter + 2, 400, 11).passed);
    }

    // deterministic for a fixed seed
    Verdict v1 = verify_definition(hnaf, 2, 1000, 5);
    Verdict v2 = verify_definition(hnaf, 2, 1000, 5);
    CHECK(v1.passed == v2.passed);
    CHECK(v1.trials == v2.trials);
}

TEST_CASE("exponential and logarithmic transforms") {
    const auto& sod = catalog_entry("sum_of_digits");
    auto pow2 = exp_transform(sod, Rational(2));
    CHECK(pow2.kind == Kind::multiplicative);
    CHECK(pow2.parameter == 0);
    const auto& cataloged = catalog_entry("pow2_sum_of_digits");
    for (unsigned long n = 0; n < 4096; ++n)
        CHECK(pow2.evaluator(Integer(n)) == cataloged.evaluator(Integer(n)));
    CHECK(verify_definition(pow2, 0, 1000, 3).passed);

    const auto& hnaf = catalog_entry("h_naf");
    auto exp_h = exp_transform(hnaf, Rational(3, 2));
    auto back = log_transform(exp_h, Rational(3, 2));
    for (unsigned long n = 0; n < 10000; n += 3)
        CHECK(back.evaluator(Integer(n)) == hnaf.evaluator(Integer(n)));

    auto exp_c = exp_transform(catalog_entry("c_0101"), Rational(3));
    CHECK(verify_definition(exp_c, 4, 1000, 3).passed);
    CHECK(verify_definition(exp_c, 2, 1000, 3).passed);  // the declared parameter transfers

    // errors carry the offending argument
    ArithmeticFunction bad;
    bad.name = "bad";
    bad.base = 2;
    bad.kind = Kind::multiplicative;
    bad.evaluator = [](const Integer& n) { return n == 1 ? Rational(0) : Rational(1); };
    auto logbad = log_transform(bad, Rational(2));
    CHECK_THROWS_WITH_AS(logbad.evaluator(1), doctest::Contains("n = 1"), MathError);
    CHECK_THROWS_AS(log_transform(catalog_entry("r_opt"), Rational(1)), PreconditionError);
    CHECK_THROWS_AS(exp_transform(catalog_entry("r_opt"), Rational(2)), PreconditionError);
}

TEST_CASE("linear combinations of additive functions") {
    const auto& hnaf = catalog_entry("h_naf");
    const auto& sod = catalog_entry("sum_of_digits");
    Block b01 = parse_block("01", 2);
    auto c01 = make_block_count_function(b01);

    auto combo = linear_combination(hnaf, c01, Rational(1), Rational(1));
    CHECK(combo.parameter == 2);
    CHECK(verify_definition(combo, 2, 2000, 17).passed);

    auto same = linear_combination(hnaf, sod, Rational(1), Rational(0));
    auto doubled = linear_combination(sod, sod, Rational(2), Rational(-1));
    for (unsigned long n = 0; n < 2000; ++n) {
        CHECK(same.evaluator(Integer(n)) == hnaf.evaluator(Integer(n)));
        CHECK(doubled.evaluator(Integer(n)) == sod.evaluator(Integer(n)));
    }

    ArithmeticFunction base3 = make_sum_of_digits(3);
    CHECK_THROWS_AS(linear_combination(hnaf, base3, Rational(1), Rational(1)), PreconditionError);
    CHECK_THROWS_AS(linear_combination(hnaf, catalog_entry("r_opt"), Rational(1), Rational(1)),
                    PreconditionError);
}
