#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "polybif/parse.hpp"
#include "polybif/poly.hpp"
#include "polybif/rational_function.hpp"
#include "test_helpers.hpp"

using namespace polybif;
using testutil::Rng;

static SparseLaurentPoly P(const std::string& s, int n = 2) {
    return parse_polynomial(s, testutil::var_names(n));
}

TEST_CASE("parse_rational_function worked examples") {
    auto f = parse_rational_function("(x^2+y)/(x+y)", {"x", "y"});
    CHECK(f.P == P("x^2+y"));
    CHECK(f.Q == P("x+y"));

    auto g = parse_rational_function("x + x^2*y", {"x", "y"});
    CHECK(g.P == P("x + x^2*y"));
    CHECK(g.Q == SparseLaurentPoly::constant(2, 1));
    CHECK(g.is_polynomial());
}

TEST_CASE("parse canonicalization and round trip") {
    auto f = parse_rational_function("(2/3)*x - y", {"x", "y"});
    std::string printed = f.to_string();
    auto g = parse_rational_function(printed, {"x", "y"});
    CHECK(f.P == g.P);
    CHECK(f.Q == g.Q);
    // joint content is 1 and Q's leading coefficient is positive
    CHECK(rat_gcd(f.P.content(), f.Q.content()) == 1);
    CHECK(f.Q.leading_coefficient() > 0);
}

TEST_CASE("parser error reporting") {
    CHECK_THROWS_AS(parse_polynomial("x + ", {"x", "y"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x + q", {"x", "y"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("2x", {"x", "y"}), ParseError); // implicit product
    CHECK_THROWS_AS(parse_polynomial("x^-2", {"x", "y"}), ParseError);
    CHECK_THROWS_AS(parse_rational_function("x/(y - y)", {"x", "y"}), ParseError);
    try {
        parse_polynomial("x + q", {"x", "y"});
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
        CHECK(std::string(e.what()).find("unknown variable") != std::string::npos);
    }
}

TEST_CASE("evaluate worked examples") {
    using C = std::complex<double>;
    auto p = P("x^2+y");
    CHECK(p.evaluate({C(1, 0), C(1, 0)}) == C(2, 0));
    auto q = P("x+2*y");
    CHECK(q.evaluate({C(1, 0), C(1, 0)}) == C(3, 0));
    // (2i)^2 + 1 = -3
    auto v = p.evaluate({C(0, 2), C(1, 0)});
    CHECK(std::abs(v - C(-3, 0)) < 1e-12);
}

TEST_CASE("partial derivative worked examples") {
    CHECK(P("x^2+y").partial_derivative(0) == P("2*x"));
    CHECK(P("x+2*y").partial_derivative(1) == P("2"));
    CHECK(P("x + x^2*y").partial_derivative(0) == P("1 + 2*x*y"));
}

TEST_CASE("parser round trip on random polynomials") {
    Rng rng(42);
    for (int iter = 0; iter < 1000; ++iter) {
        int n = static_cast<int>(rng.uniform(2, 4));
        auto vars = testutil::var_names(n);
        SparseLaurentPoly g = testutil::random_poly(rng, n, 8, 10, 9, true);
        // random rational coefficients now and then
        if (rng.uniform(0, 3) == 0 && !g.is_zero()) g = Rat(1, rng.uniform(2, 7)) * g;
        SparseLaurentPoly back = parse_polynomial(g.to_string(vars), vars);
        REQUIRE(back == g);
    }
}

TEST_CASE("derivative linearity and product rule") {
    Rng rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        int n = static_cast<int>(rng.uniform(2, 3));
        auto g = testutil::random_poly(rng, n, 5, 6);
        auto h = testutil::random_poly(rng, n, 5, 6);
        Rat a(rng.uniform(-4, 4)), b(rng.uniform(-4, 4));
        for (int i = 0; i < n; ++i) {
            CHECK((a * g + b * h).partial_derivative(i) ==
                  a * g.partial_derivative(i) + b * h.partial_derivative(i));
            CHECK((g * h).partial_derivative(i) ==
                  g.partial_derivative(i) * h + g * h.partial_derivative(i));
        }
    }
}

TEST_CASE("derivative agrees with central finite differences") {
    Rng rng(11);
    using C = std::complex<double>;
    for (int iter = 0; iter < 50; ++iter) {
        int n = 2;
        auto g = testutil::random_poly(rng, n, 4, 5, 3);
        std::vector<C> z = {C(0.7 + 0.4 * rng.real01(), 0.3 * rng.real01()),
                            C(0.9 - 0.5 * rng.real01(), 0.2 + 0.1 * rng.real01())};
        double h = 1e-6;
        for (int i = 0; i < n; ++i) {
            auto zp = z, zm = z;
            zp[i] += h;
            zm[i] -= h;
            C fd = (g.evaluate(zp) - g.evaluate(zm)) / C(2 * h, 0);
            C ex = g.partial_derivative(i).evaluate(z);
            double scale = std::max(1.0, std::abs(ex));
            CHECK(std::abs(fd - ex) / scale < 1e-6);
        }
    }
}

TEST_CASE("canonical term order is graded lex") {
    auto p = P("x + y^2 + x*y + 1");
    // graded-lex largest first in printing
    CHECK(p.to_string({"x", "y"}) == "x*y + y^2 + x + 1");
}
