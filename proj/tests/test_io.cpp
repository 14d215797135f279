#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "qqa/catalog.hpp"
#include "qqa/errors.hpp"
#include "qqa/stats.hpp"

using namespace qqa;

TEST_CASE("rational formatting and parsing") {
    CHECK(format_rational(Rational(17, 256)) == "17/256");
    CHECK(format_rational(Rational(-3)) == "-3");
    CHECK(parse_rational("17/256") == Rational(17, 256));
    CHECK(parse_rational("-5/10") == Rational(-1, 2));
    CHECK(parse_rational("42") == 42);
    CHECK_THROWS_AS(parse_rational("x/y"), MathError);
    CHECK_THROWS_AS(parse_rational("1/0"), MathError);
}

TEST_CASE("linear representation files round-trip exactly") {
    auto rep = make_r_opt_representation();
    CHECK(linrep_from_json(to_json(rep)) == rep);

    // fractional entries serialize as "p/q" strings
    LinearRepresentation frac = make_pow2_sum_representation();
    frac.matrices[0].at(0, 0) = Rational(22, 7);
    frac.u[0] = Rational(-1, 3);
    auto back = linrep_from_json(to_json(frac));
    CHECK(back == frac);
    CHECK(to_json(frac).find("22/7") != std::string::npos);

    CHECK_THROWS_AS(linrep_from_json("not json at all"), PreconditionError);
    CHECK_THROWS_AS(linrep_from_json("{\"q\": 2}"), PreconditionError);
    // wrong matrix count fails shape validation
    CHECK_THROWS_AS(linrep_from_json(R"({"q":2,"d":1,"u":[1],"v":[1],"matrices":[[[1]]]})"),
                    PreconditionError);

    std::string path = "io_test_rep.json";
    save_linrep(rep, path);
    CHECK(load_linrep(path) == rep);
    std::remove(path.c_str());
}

TEST_CASE("transducer files round-trip exactly") {
    auto t = make_h_naf_transducer();
    CHECK(transducer_from_json(to_json(t)) == t);

    auto c = make_block_count_transducer(parse_block("0101", 2));
    CHECK(transducer_from_json(to_json(c)) == c);

    Transducer frac = t;
    frac.transitions[0][1].output = Rational(1, 3);
    CHECK(transducer_from_json(to_json(frac)) == frac);

    CHECK_THROWS_AS(transducer_from_json("{}"), PreconditionError);
    std::string path = "io_test_transducer.json";
    save_transducer(t, path);
    CHECK(load_transducer(path) == t);
    std::remove(path.c_str());
}

TEST_CASE("result serialization") {
    auto c = exact_constants_additive(catalog_entry("h_naf"));
    std::string j = to_json(c);
    CHECK(j.find("\"1/3\"") != std::string::npos);
    CHECK(j.find("\"2/27\"") != std::string::npos);
    CHECK(j.find("exact-rational") != std::string::npos);

    auto e = clt_experiment(catalog_entry("h_naf"), Scale::power(16), 1000, 2, c.mu, c.sigma2);
    std::string ej = to_json(e);
    CHECK(ej.find("\"ks\"") != std::string::npos);
    CHECK(ej.find("\"histogram\"") != std::string::npos);
    std::string csv = histogram_csv(e);
    CHECK(csv.rfind("bin_left,bin_right,count\n", 0) == 0);
    unsigned long lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == e.bins.size() + 1);
}
