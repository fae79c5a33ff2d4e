#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "polybif/coprimality.hpp"
#include "polybif/faces.hpp"
#include "test_helpers.hpp"

using namespace polybif;
using testutil::Rng;

namespace {

std::set<std::vector<ExponentVector>> type_faces(const FaceClassification& cls, FaceType t) {
    std::set<std::vector<ExponentVector>> out;
    for (auto& cf : cls.faces) {
        if (cf.label != t) continue;
        auto pts = cls.NF.face_vertex_points(cls.NF.faces()[cf.index]);
        std::sort(pts.begin(), pts.end());
        out.insert(pts);
    }
    return out;
}

std::vector<ExponentVector> face_pts(std::initializer_list<std::initializer_list<std::int64_t>> l) {
    std::vector<ExponentVector> v;
    for (auto& e : l) v.emplace_back(e);
    std::sort(v.begin(), v.end());
    return v;
}

int find_face(const FaceClassification& cls, const std::vector<ExponentVector>& want) {
    for (auto& cf : cls.faces) {
        auto pts = cls.NF.face_vertex_points(cls.NF.faces()[cf.index]);
        std::sort(pts.begin(), pts.end());
        if (pts == want) return cf.index;
    }
    return -1;
}

bool euler_identity_holds(const SparseLaurentPoly& g, const IVec& u, const Rat& d) {
    // sum_j u_j z_j dg/dz_j == d * g as an exact polynomial identity
    SparseLaurentPoly lhs(g.dimension());
    for (int j = 0; j < g.dimension(); ++j) {
        auto t = var_power(g.dimension(), j, 1) * g.partial_derivative(j);
        lhs = lhs + Rat(u[j]) * t;
    }
    return lhs == d * g;
}

} // namespace

TEST_CASE("classification of the running example f = (x^2+y)/(x+y)") {
    auto f = testutil::make_f("(x^2+y)/(x+y)");
    auto cls = classify_faces(f);

    auto t1 = type_faces(cls, FaceType::TypeI);
    std::set<std::vector<ExponentVector>> expect_t1 = {face_pts({{0, 2}}),
                                                       face_pts({{2, 1}, {0, 2}})};
    CHECK(t1 == expect_t1);

    auto t2 = type_faces(cls, FaceType::TypeII);
    std::set<std::vector<ExponentVector>> expect_t2 = {
        face_pts({{3, 0}}), face_pts({{2, 1}}), face_pts({{3, 0}, {2, 1}})};
    CHECK(t2 == expect_t2);

    // both criteria agree on every face
    for (auto& cf : cls.faces)
        if (cf.label != FaceType::Interior) CHECK(cf.generator_criterion == cf.aff_contains_zero);
}

TEST_CASE("classification of the figures input") {
    // P with support {(0,0),(2,3),(5,3)}, Q with support {(0,0),(2,3),(4,1)}
    auto f = testutil::make_f("(1 + x^2*y^3 + x^5*y^3)/(1 + x^2*y^3 + x^4*y)");
    auto cls = classify_faces(f);
    CHECK(cls.NF.vertices().size() == 5);

    auto t1 = type_faces(cls, FaceType::TypeI);
    std::set<std::vector<ExponentVector>> expect = {
        face_pts({{0, 0}}),                 // O
        face_pts({{4, 6}}),                 // A
        face_pts({{0, 0}, {4, 6}}),         // OA
        face_pts({{0, 0}, {4, 1}}),         // OD
        face_pts({{4, 6}, {7, 6}}),         // AB
    };
    CHECK(t1 == expect);
}

TEST_CASE("classification of the parallel-segment example f = (x+y)/(x+2y)") {
    auto f = testutil::make_f("(x+y)/(x+2*y)");
    auto cls = classify_faces(f);
    // all three faces (two vertices and the whole segment) are type I
    auto t1 = type_faces(cls, FaceType::TypeI);
    std::set<std::vector<ExponentVector>> expect = {
        face_pts({{2, 0}}), face_pts({{0, 2}}), face_pts({{2, 0}, {0, 2}})};
    CHECK(t1 == expect);
    CHECK(type_faces(cls, FaceType::TypeII).empty());
}

TEST_CASE("polynomial with no type I faces") {
    auto f = testutil::make_f("x + x^2*y");
    auto cls = classify_faces(f);
    CHECK(type_faces(cls, FaceType::TypeI).empty());
    CHECK_FALSE(type_faces(cls, FaceType::TypeII).empty());
}

TEST_CASE("face functions of the running example") {
    auto f = testutil::make_f("(x^2+y)/(x+y)");
    auto cls = classify_faces(f);

    int v02 = find_face(cls, face_pts({{0, 2}}));
    REQUIRE(v02 >= 0);
    auto ff = face_function(f, cls, v02);
    CHECK(ff.numerator == parse_polynomial("y", {"x", "y"}));
    CHECK(ff.denominator == parse_polynomial("y", {"x", "y"}));
    CHECK(ff.key == "face:(0,2)");

    int edge = find_face(cls, face_pts({{2, 1}, {0, 2}}));
    REQUIRE(edge >= 0);
    auto fe = face_function(f, cls, edge);
    CHECK(fe.numerator == parse_polynomial("x^2+y", {"x", "y"}));
    CHECK(fe.denominator == parse_polynomial("y", {"x", "y"}));

    auto g = testutil::make_f("(x+y)/(x+2*y)");
    auto gcls = classify_faces(g);
    int gv = find_face(gcls, face_pts({{0, 2}}));
    REQUIRE(gv >= 0);
    auto gf = face_function(g, gcls, gv);
    CHECK(gf.numerator == parse_polynomial("y", {"x", "y"}));
    CHECK(gf.denominator == parse_polynomial("2*y", {"x", "y"}));
}

TEST_CASE("reduction of face functions") {
    auto f = testutil::make_f("(x^2+y)/(x+y)");
    auto cls = classify_faces(f);

    int v02 = find_face(cls, face_pts({{0, 2}}));
    auto red0 = reduce_face_function(face_function(f, cls, v02));
    CHECK(red0.k == 0);
    CHECK(exp_is_zero(red0.prefactor));
    CHECK(red0.num.constant_value() / red0.den.constant_value() == 1);

    int edge = find_face(cls, face_pts({{2, 1}, {0, 2}}));
    auto red1 = reduce_face_function(face_function(f, cls, edge));
    CHECK(red1.k == 1);
    CHECK(exp_is_zero(red1.prefactor));
    // r(s) = s + 1 in the canonical basis
    CHECK(red1.num == parse_polynomial("x + 1", {"x"}));
    CHECK(red1.den == parse_polynomial("1", {"x"}));

    // reduction soundness: re-substitution recovers the truncations
    auto [num_back, den_back] = reexpand(red1, 2);
    CHECK(num_back == parse_polynomial("x^2+y", {"x", "y"}));
    CHECK(den_back == parse_polynomial("y", {"x", "y"}));
}

TEST_CASE("face critical values of the running example") {
    auto f = testutil::make_f("(x^2+y)/(x+y)");
    auto cls = classify_faces(f);

    int edge = find_face(cls, face_pts({{2, 1}, {0, 2}}));
    auto cv_edge = face_critical_values(face_function(f, cls, edge));
    CHECK(cv_edge.values.empty());
    CHECK(cv_edge.complete);

    int v02 = find_face(cls, face_pts({{0, 2}}));
    auto cv_v = face_critical_values(face_function(f, cls, v02));
    REQUIRE(cv_v.values.size() == 1);
    REQUIRE(cv_v.values[0].exact.has_value());
    CHECK(*cv_v.values[0].exact == 1);
    CHECK(cv_v.complete);

    // type II vertex (3,0): f_gamma = x^2/x, no critical points on the torus
    int v30 = find_face(cls, face_pts({{3, 0}}));
    auto cv_t2 = face_critical_values(face_function(f, cls, v30));
    CHECK(cv_t2.values.empty());
}

TEST_CASE("cf values worked examples") {
    auto g = testutil::make_f("(x+y)/(x+2*y)");
    auto gcls = classify_faces(g);
    auto cf = cf_values(g, gcls);
    REQUIRE(cf.values.size() == 2);
    CHECK(*cf.values[0].exact == Rat(1, 2));
    CHECK(*cf.values[1].exact == 1);

    auto f = testutil::make_f("(x^2+y)/(x+y)");
    auto fcls = classify_faces(f);
    auto cff = cf_values(f, fcls);
    REQUIRE(cff.values.size() == 1);
    CHECK(*cff.values[0].exact == 1);

    auto h = testutil::make_f("x + x^2*y");
    auto hcls = classify_faces(h);
    CHECK(cf_values(h, hcls).values.empty());
}

TEST_CASE("constant face function on a positive-dimensional face") {
    // the OA face of the figures input has proportional truncations
    auto f = testutil::make_f("(1 + x^2*y^3 + x^5*y^3)/(1 + x^2*y^3 + x^4*y)");
    auto cls = classify_faces(f);
    int oa = find_face(cls, face_pts({{0, 0}, {4, 6}}));
    REQUIRE(oa >= 0);
    auto cv = face_critical_values(face_function(f, cls, oa));
    REQUIRE(cv.values.size() == 1);
    CHECK(*cv.values[0].exact == 1);
    CHECK(cv.complete);
}

TEST_CASE("euler identity for face truncations") {
    Rng rng(314);
    auto check_instance = [&](const RationalFunction& f) {
        auto cls = classify_faces(f);
        for (auto& cf : cls.faces) {
            const FaceRecord& face = cls.NF.faces()[cf.index];
            if (!face.witness_u) continue;
            auto pgam = truncate_to_face(f.P, *face.witness_u);
            auto qgam = truncate_to_face(f.Q, *face.witness_u);
            std::vector<IVec> us = face.normal_generators;
            us.push_back(*face.witness_u);
            for (auto& u : us) {
                CHECK(euler_identity_holds(pgam, u, cls.NP.support_value(u)));
                CHECK(euler_identity_holds(qgam, u, cls.NQ.support_value(u)));
            }
        }
    };
    check_instance(testutil::make_f("(x^2+y)/(x+y)"));
    check_instance(testutil::make_f("(x+y)/(x+2*y)"));
    for (int iter = 0; iter < 25; ++iter) {
        auto p = testutil::random_poly(rng, 2, 4, 5);
        auto q = testutil::random_poly(rng, 2, 4, 5);
        auto f = make_rational_function(p, q, {"x", "y"});
        auto cop = coprimality_check(f.P, f.Q);
        if (cop.status == CoprimalityStatus::Refuted) continue;
        check_instance(f);
    }
}

TEST_CASE("criteria agreement on random instances") {
    Rng rng(2718);
    int done = 0;
    while (done < 60) {
        auto p = testutil::random_poly(rng, 2, 5, 6);
        auto q = testutil::random_poly(rng, 2, 5, 6);
        auto f = make_rational_function(p, q, {"x", "y"});
        if (coprimality_check(f.P, f.Q).status == CoprimalityStatus::Refuted) continue;
        ++done;
        auto cls = classify_faces(f); // throws on disagreement
        for (auto& cf : cls.faces)
            if (cf.label != FaceType::Interior)
                CHECK(cf.generator_criterion == cf.aff_contains_zero);
    }
}

TEST_CASE("type I set matches the bad-face oracle for polynomials") {
    Rng rng(99);
    int done = 0;
    while (done < 100) {
        auto p = testutil::random_poly(rng, 2, 4, 5);
        if (p.is_zero()) continue;
        ++done;
        auto f = make_rational_function(p, SparseLaurentPoly::constant(2, 1), {"x", "y"});
        auto cls = classify_faces(f);
        std::set<std::vector<ExponentVector>> mine;
        for (auto& cf : cls.faces) {
            if (cf.label != FaceType::TypeI) continue;
            auto face = cls.NF.faces()[cf.index];
            auto trunc = truncate_to_face(f.P, *face.witness_u);
            auto supp = trunc.support();
            std::sort(supp.begin(), supp.end());
            mine.insert(supp);
        }
        auto oracle = testutil::nz_bad_faces(f.P, 12);
        CHECK(mine == oracle);
    }
}

TEST_CASE("basis invariance of face critical values") {
    auto f = testutil::make_f("(x^3 + 2*x*y + y^2)/(x + y)");
    auto cls = classify_faces(f);
    for (auto& cf : cls.faces) {
        if (cf.label != FaceType::TypeI) continue;
        auto ff = face_function(f, cls, cf.index);
        auto red = reduce_face_function(ff);
        if (red.k != 1) continue;
        // flip the basis sign: a valid unimodular change
        IMat U{{Int(-1)}};
        auto red2 = reduce_face_function(ff, &U);
        auto [n1, d1] = reexpand(red, 2);
        auto [n2, d2] = reexpand(red2, 2);
        CHECK(n1 == n2);
        CHECK(d1 == d2);
    }
    // and through the critical values of the full pipeline on an edge with
    // nontrivial reduced function
    auto g = testutil::make_f("(x^2 + 3*x*y + y^2)/(x + y)");
    auto gcls = classify_faces(g);
    for (auto& cf : gcls.faces) {
        if (cf.label == FaceType::Interior) continue;
        auto ff = face_function(g, gcls, cf.index);
        auto cv = face_critical_values(ff);
        // values must be reproducible
        auto cv2 = face_critical_values(ff);
        REQUIRE(cv.values.size() == cv2.values.size());
        for (std::size_t i = 0; i < cv.values.size(); ++i)
            CHECK(std::abs(cv.values[i].value - cv2.values[i].value) < 1e-12);
    }
}
