#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "polybif/coprimality.hpp"
#include "polybif/parse.hpp"
#include "polybif/roots.hpp"
#include "polybif/subresultant.hpp"
#include "test_helpers.hpp"

using namespace polybif;
using testutil::Rng;

static SparseLaurentPoly P2(const std::string& s) {
    return parse_polynomial(s, {"x", "y"});
}

TEST_CASE("pseudo remainder and exact division") {
    auto a = P2("x^3 + x*y + 1");
    auto b = P2("x^2 + y");
    auto q = exact_divide(a * b, b);
    CHECK(q == a);
    CHECK_THROWS_AS(exact_divide(P2("x^2+1"), P2("x+1")), InternalError);

    auto r = pseudo_remainder(a, b, 0);
    CHECK(r.degree_in(0) < 2);
}

TEST_CASE("resultant of univariate polynomials matches known values") {
    auto a = P2("x^2 - 2");
    auto b = P2("x^2 - 3");
    auto r = resultant(a, b, 0);
    CHECK(r == P2("1"));

    // Res_x(x^2+y, x+y): evaluate x^2+y at the root x = -y
    auto rxy = resultant(P2("x^2+y"), P2("x+y"), 0);
    CHECK(primitive_normalize(rxy) == P2("y^2 + y"));

    // common factor forces a zero resultant
    auto rz = resultant(P2("x*y + x"), P2("x^2 + x*y"), 0);
    CHECK(rz.is_zero());
}

TEST_CASE("discriminant of the pencil from the worked example") {
    // g_t = x^2 + y - t(x+y); Res_x(g, dg/dx) is +-(4(1-t)y - t^2)
    auto vars = std::vector<std::string>{"x", "y", "t"};
    auto g = parse_polynomial("x^2 + y - t*x - t*y", vars);
    auto dg = g.partial_derivative(0);
    auto res = primitive_normalize(resultant(g, dg, 0));
    auto expect = primitive_normalize(parse_polynomial("4*y - 4*t*y - t^2", vars));
    bool match = (res == expect) || (res == -expect);
    CHECK(match);
}

TEST_CASE("resultant agrees with root-product evaluation") {
    Rng rng(2024);
    int cases = 0;
    while (cases < 200) {
        int da = static_cast<int>(rng.uniform(1, 5));
        int db = static_cast<int>(rng.uniform(1, 5));
        UniPoly a(da + 1), b(db + 1);
        for (auto& c : a) c = Rat(rng.uniform(-6, 6));
        for (auto& c : b) c = Rat(rng.uniform(-6, 6));
        uni_trim(a);
        uni_trim(b);
        if (uni_degree(a) < 1 || uni_degree(b) < 1) continue;
        ++cases;
        auto pa = from_unipoly(a, 2, 0);
        auto pb = from_unipoly(b, 2, 0);
        auto res = resultant(pa, pb, 0);
        REQUIRE(res.is_constant());
        double exact = rat_to_double(res.constant_value());
        // numeric check: lc(a)^deg(b) * prod of b at all roots of a
        std::vector<std::complex<double>> all;
        {
            int d = uni_degree(a);
            Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
            double lead = rat_to_double(a.back());
            for (int i = 0; i < d; ++i) {
                companion(i, d - 1) = -rat_to_double(a[i]) / lead;
                if (i + 1 < d) companion(i + 1, i) = 1.0;
            }
            Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
            for (int i = 0; i < d; ++i) all.push_back(es.eigenvalues()(i));
        }
        std::complex<double> prod = std::pow(rat_to_double(a.back()), uni_degree(b));
        for (auto& z : all) prod *= uni_eval(b, z);
        double scale = std::max({1.0, std::abs(exact), std::abs(prod)});
        CHECK(std::abs(prod - std::complex<double>(exact, 0)) / scale < 1e-5);
    }
}

TEST_CASE("bivariate gcd finds common factors") {
    auto g = gcd_bivariate(P2("x^2 + x*y"), P2("x^2 - x*y"));
    CHECK(g == P2("x"));
    auto h = gcd_bivariate(P2("x^2+y"), P2("x+y"));
    CHECK(h.is_constant());
    auto k = gcd_bivariate(P2("x^2 - y^2"), P2("x+y"));
    CHECK(k == P2("x+y"));
}

TEST_CASE("coprimality worked examples") {
    auto c1 = coprimality_check(P2("x^2+y"), P2("x+y"));
    CHECK(c1.status == CoprimalityStatus::Verified);

    auto c2 = coprimality_check(P2("x^2 + x*y"), P2("x^2 - x*y"));
    REQUIRE(c2.status == CoprimalityStatus::Refuted);
    REQUIRE(c2.witness.has_value());
    CHECK(*c2.witness == P2("x"));

    auto vars3 = testutil::var_names(3);
    auto p3 = parse_polynomial("x + y + z", vars3);
    auto q3 = parse_polynomial("x - y + z", vars3);
    auto c3 = coprimality_check(p3, q3, 1);
    CHECK(c3.status == CoprimalityStatus::Assumed);
    CHECK(c3.detail.find("probabilistic pass") != std::string::npos);

    // a shared factor in three variables is flagged as suspicious
    auto f3 = parse_polynomial("x + 2*y + z", vars3);
    auto c4 = coprimality_check(p3 * f3, q3 * f3, 1);
    CHECK(c4.status == CoprimalityStatus::Assumed);
    CHECK(c4.detail.find("warning") != std::string::npos);
}

TEST_CASE("random products always yield refuted coprimality (n=2)") {
    Rng rng(77);
    for (int iter = 0; iter < 50; ++iter) {
        auto f = testutil::random_poly(rng, 2, 3, 4);
        auto p = testutil::random_poly(rng, 2, 3, 4);
        auto q = testutil::random_poly(rng, 2, 3, 4);
        if (f.is_constant()) continue;
        auto c = coprimality_check(f * p, f * q);
        CHECK(c.status == CoprimalityStatus::Refuted);
    }
}

TEST_CASE("univariate root pipeline") {
    // (x - 2)(x^2 + 1): the rational root 2 is certified exactly
    UniPoly p = uni_mul(UniPoly{-2, 1}, UniPoly{1, 0, 1});
    auto roots = complex_roots(p);
    REQUIRE(roots.size() == 3);
    bool got2 = false, goti = false, gotmi = false;
    for (auto& r : roots) {
        if (r.exact && *r.exact == 2) got2 = true;
        if (std::abs(r.value - std::complex<double>(0, 1)) < 1e-9) goti = true;
        if (std::abs(r.value - std::complex<double>(0, -1)) < 1e-9) gotmi = true;
    }
    CHECK(got2);
    CHECK(goti);
    CHECK(gotmi);

    UniPoly sq = uni_mul(UniPoly{-1, 1}, UniPoly{-1, 1});
    auto sf = uni_squarefree_part(sq);
    CHECK(uni_degree(sf) == 1);

    // rational roots with nontrivial denominators: (2x-1)(3x+2)
    UniPoly q = uni_mul(UniPoly{-1, 2}, UniPoly{2, 3});
    UniPoly qq = q;
    auto rs = extract_rational_roots(qq);
    REQUIRE(rs.size() == 2);
}
