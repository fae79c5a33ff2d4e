#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "polybif/polytope.hpp"
#include "polybif/rational_function.hpp"
#include "polybif/roots.hpp"
#include "polybif/subresultant.hpp"

namespace polybif {

enum class FaceType { TypeI, TypeII, Interior };

inline const char* face_type_name(FaceType t) {
    switch (t) {
        case FaceType::TypeI: return "type_i";
        case FaceType::TypeII: return "type_ii";
        default: return "interior";
    }
}

struct DValueTriple {
    IVec generator;
    Rat dP, dQ, dF; // dF = dP - dQ
};

struct ClassifiedFace {
    int index = -1; // position in N(f)'s face list
    FaceDecomposition decomposition;
    FaceType label = FaceType::Interior;
    std::vector<DValueTriple> d_values;
    bool aff_contains_zero = false; // independent Aff-span criterion
    bool generator_criterion = false;
};

struct FaceClassification {
    LatticePolytope NP, NQ, NF;
    std::vector<ClassifiedFace> faces; // aligned with NF.faces()

    std::vector<int> type_i_indices() const {
        std::vector<int> out;
        for (auto& f : faces)
            if (f.label == FaceType::TypeI) out.push_back(f.index);
        return out;
    }
    std::vector<int> type_ii_indices() const {
        std::vector<int> out;
        for (auto& f : faces)
            if (f.label == FaceType::TypeII) out.push_back(f.index);
        return out;
    }
};

inline std::string face_key(const LatticePolytope& NF, const FaceRecord& f) {
    auto pts = NF.face_vertex_points(f);
    std::sort(pts.begin(), pts.end());
    auto fmt = [](const ExponentVector& e) {
        std::string s = "(";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e[i]);
        }
        return s + ")";
    };
    if (pts.size() == 1) return "face:" + fmt(pts[0]);
    std::string s = "face:{";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ",";
        s += fmt(pts[i]);
    }
    return s + "}";
}

/// Classify every face of N(f) = N(P) + N(Q) as type I / type II / interior.
/// Both the generator-quantifier criterion and the affine-span criterion are
/// evaluated and must agree; a mismatch is an internal error.
inline FaceClassification classify_faces(const RationalFunction& f) {
    if (f.coprimality.status == CoprimalityStatus::Refuted)
        throw std::invalid_argument("classify_faces: P and Q share a nonconstant factor");
    FaceClassification cls;
    cls.NP = newton_polytope(f.P);
    cls.NQ = newton_polytope(f.Q);
    cls.NF = minkowski_sum(cls.NP, cls.NQ);
    int n = f.dimension();

    for (std::size_t i = 0; i < cls.NF.faces().size(); ++i) {
        const FaceRecord& face = cls.NF.faces()[i];
        ClassifiedFace out;
        out.index = static_cast<int>(i);

        // "supported by some u outside the nonnegative orthant" holds iff the
        // normal cone is not contained in the orthant, i.e. some generator
        // has a negative coordinate: if x in the cone has x_i < 0, then for
        // y in the relative interior the point (1-t)y + tx stays in the
        // relative interior for t < 1 and its i-th coordinate tends to x_i,
        // so the relative interior also leaves the orthant.
        bool outside = false;
        for (auto& g : face.normal_generators)
            for (auto& c : g)
                if (c < 0) outside = true;

        for (auto& g : face.normal_generators) {
            DValueTriple t;
            t.generator = g;
            t.dP = cls.NP.support_value(g);
            t.dQ = cls.NQ.support_value(g);
            t.dF = t.dP - t.dQ;
            out.d_values.push_back(std::move(t));
        }

        if (face.witness_u) {
            out.decomposition = decompose_face(cls.NF, static_cast<int>(i), cls.NP, cls.NQ);
        } else {
            // full-dimensional N(f) itself; supported by no nonzero vector
            out.decomposition.gamma_index = static_cast<int>(i);
            out.decomposition.p_face_index = cls.NP.whole_face_index();
            out.decomposition.q_face_index = cls.NQ.whole_face_index();
        }

        if (!outside) {
            out.label = FaceType::Interior;
            cls.faces.push_back(std::move(out));
            continue;
        }

        bool gen_zero = true;
        for (auto& t : out.d_values)
            if (t.dF != 0) gen_zero = false;
        out.generator_criterion = gen_zero;

        // independent criterion: 0 in Aff(gamma(P) - gamma(Q))
        {
            auto pv = cls.NP.face_vertex_points(cls.NP.faces()[out.decomposition.p_face_index]);
            auto qv = cls.NQ.face_vertex_points(cls.NQ.faces()[out.decomposition.q_face_index]);
            IMat dirs;
            for (std::size_t a = 1; a < pv.size(); ++a)
                dirs.push_back(ivec_from_exp(exp_sub(pv[a], pv[0])));
            for (std::size_t b = 1; b < qv.size(); ++b)
                dirs.push_back(ivec_from_exp(exp_sub(qv[b], qv[0])));
            IVec v0 = ivec_from_exp(exp_sub(pv[0], qv[0]));
            std::size_t r1 = integer_rank(dirs);
            dirs.push_back(v0);
            std::size_t r2 = integer_rank(dirs);
            out.aff_contains_zero = (r1 == r2);
        }

        if (out.generator_criterion != out.aff_contains_zero)
            throw InternalError("face type criteria disagree on " + face_key(cls.NF, face));

        out.label = gen_zero ? FaceType::TypeI : FaceType::TypeII;
        (void)n;
        cls.faces.push_back(std::move(out));
    }
    return cls;
}

/// f_gamma = P_gamma(P) / Q_gamma(Q): truncations of P and Q to the
/// decomposition faces, as functions on the torus.
struct FaceFunction {
    int face_index = -1;
    FaceType label = FaceType::Interior;
    int face_dim = 0;
    SparseLaurentPoly numerator;
    SparseLaurentPoly denominator;
    std::string key;
};

inline SparseLaurentPoly truncate_to_face(const SparseLaurentPoly& g, const IVec& u) {
    Rat d;
    bool first = true;
    for (auto& [e, c] : g.terms()) {
        Rat s(ivec_dot(u, e));
        if (first || s < d) {
            d = s;
            first = false;
        }
    }
    SparseLaurentPoly out(g.dimension());
    for (auto& [e, c] : g.terms())
        if (Rat(ivec_dot(u, e)) == d) out.add_term(e, c);
    return out;
}

inline FaceFunction face_function(const RationalFunction& f, const FaceClassification& cls,
                                  int face_index) {
    const FaceRecord& face = cls.NF.faces()[face_index];
    const ClassifiedFace& cf = cls.faces[face_index];
    if (cf.label == FaceType::Interior)
        throw std::invalid_argument("face_function: interior faces have no face function");
    if (!face.witness_u) throw std::invalid_argument("face_function: face has no witness vector");
    FaceFunction ff;
    ff.face_index = face_index;
    ff.label = cf.label;
    ff.face_dim = face.dim;
    ff.numerator = truncate_to_face(f.P, *face.witness_u);
    ff.denominator = truncate_to_face(f.Q, *face.witness_u);
    ff.key = face_key(cls.NF, face);
    return ff;
}

/// Intrinsic k-variable representation of a face function via a lattice
/// basis of its direction space. For type I faces the monomial prefactor is
/// always absorbable and comes out zero; for type II it is retained.
struct ReducedFaceFunction {
    int k = 0;
    IMat basis;               // k rows, ambient length n
    SparseLaurentPoly num;    // k-variable Laurent polynomials
    SparseLaurentPoly den;
    ExponentVector prefactor; // ambient exponent; zero for type I
    ExponentVector num_anchor;
    ExponentVector den_anchor;
    FaceType label = FaceType::Interior;
    int face_index = -1;
    int face_dim = 0;
};

inline ReducedFaceFunction reduce_face_function(const FaceFunction& ff,
                                                const IMat* basis_tweak = nullptr) {
    ReducedFaceFunction red;
    red.label = ff.label;
    red.face_index = ff.face_index;
    red.face_dim = ff.face_dim;
    const SparseLaurentPoly& num = ff.numerator;
    const SparseLaurentPoly& den = ff.denominator;
    if (num.is_zero() || den.is_zero())
        throw InternalError("face function with zero truncation");
    ExponentVector na = num.terms().begin()->first;
    ExponentVector da = den.terms().begin()->first;

    IMat diffs;
    if (ff.label == FaceType::TypeI) {
        // pool all exponents against one anchor so the prefactor is absorbed
        for (auto& [e, c] : num.terms()) diffs.push_back(ivec_from_exp(exp_sub(e, na)));
        for (auto& [e, c] : den.terms()) diffs.push_back(ivec_from_exp(exp_sub(e, na)));
        da = na;
    } else {
        for (auto& [e, c] : num.terms()) diffs.push_back(ivec_from_exp(exp_sub(e, na)));
        for (auto& [e, c] : den.terms()) diffs.push_back(ivec_from_exp(exp_sub(e, da)));
    }
    IMat basis = lattice_row_basis(std::move(diffs));
    if (ff.label == FaceType::TypeI && static_cast<int>(basis.size()) != ff.face_dim)
        throw InternalError("type I prefactor not absorbable: reduction rank exceeds face dim");
    if (basis_tweak) {
        // replace by U * basis for a unimodular U (test hook for basis invariance)
        const IMat& U = *basis_tweak;
        IMat nb(basis.size(), IVec(basis.empty() ? 0 : basis[0].size(), 0));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j)
                for (std::size_t c = 0; c < basis[0].size(); ++c)
                    nb[i][c] += U[i][j] * basis[j][c];
        basis = std::move(nb);
    }
    int k = static_cast<int>(basis.size());
    red.k = k;
    red.basis = basis;
    red.num_anchor = na;
    red.den_anchor = da;
    red.prefactor = exp_sub(na, da);

    auto project = [&](const SparseLaurentPoly& g, const ExponentVector& anchor) {
        SparseLaurentPoly out(k);
        for (auto& [e, c] : g.terms()) {
            IVec x = basis.empty() ? IVec{} : lattice_coordinates(basis, ivec_from_exp(exp_sub(e, anchor)));
            ExponentVector xe(k);
            for (int i = 0; i < k; ++i) xe[i] = x[i].convert_to<std::int64_t>();
            out.add_term(xe, c);
        }
        return out;
    };
    red.num = project(num, na);
    red.den = project(den, da);
    return red;
}

/// Re-substitute the lattice basis; recovers the original truncations
/// exactly (up to the recorded prefactor split). Used by soundness checks.
inline std::pair<SparseLaurentPoly, SparseLaurentPoly> reexpand(const ReducedFaceFunction& red,
                                                                int n) {
    auto lift = [&](const SparseLaurentPoly& g, const ExponentVector& anchor) {
        SparseLaurentPoly out(n);
        for (auto& [e, c] : g.terms()) {
            ExponentVector full = anchor;
            for (int i = 0; i < red.k; ++i)
                for (int j = 0; j < n; ++j)
                    full[j] += e[i] * red.basis[i][j].convert_to<std::int64_t>();
            out.add_term(full, c);
        }
        return out;
    };
    return {lift(red.num, red.num_anchor), lift(red.den, red.den_anchor)};
}

enum class Certification { ExactRational, NumericCertified, NumericHeuristic };

inline const char* certification_name(Certification c) {
    switch (c) {
        case Certification::ExactRational: return "exact-rational";
        case Certification::NumericCertified: return "numeric-certified";
        default: return "numeric-heuristic";
    }
}

struct CriticalValue {
    std::complex<double> value;
    std::optional<Rat> exact;
    Certification cert = Certification::NumericCertified;
    int multiplicity_hint = 1;
};

struct CriticalValueSet {
    std::vector<CriticalValue> values;
    std::string provenance; // "global", face key, or "cf"
    bool complete = false;
    std::vector<std::string> notes;
};

inline void dedupe_critical_values(CriticalValueSet& s, double tol) {
    std::vector<ClusteredValue> cv;
    for (auto& v : s.values) cv.push_back({v.value, v.exact});
    auto reps = cluster_values(std::move(cv), tol);
    std::vector<CriticalValue> out;
    for (auto& r : reps) {
        CriticalValue v;
        v.value = r.value;
        v.exact = r.exact;
        v.cert = r.exact ? Certification::ExactRational : Certification::NumericCertified;
        out.push_back(v);
    }
    // keep certification of surviving representatives conservative
    for (auto& v : out) {
        for (auto& orig : s.values)
            if (std::abs(orig.value - v.value) <= tol &&
                orig.cert == Certification::NumericHeuristic)
                v.cert = Certification::NumericHeuristic;
    }
    s.values = std::move(out);
}

namespace facedetail {

// clear negative exponents by a monomial shift (same torus zero set)
inline SparseLaurentPoly cleared(const SparseLaurentPoly& g) {
    int k = g.dimension();
    ExponentVector neg(k, 0);
    for (auto& [e, c] : g.terms())
        for (int i = 0; i < k; ++i) neg[i] = std::min(neg[i], e[i]);
    for (int i = 0; i < k; ++i) neg[i] = -neg[i];
    return exp_is_zero(neg) ? g : g.shifted(neg);
}

// split a univariate Laurent polynomial in s into (s^shift, ordinary part
// with nonzero constant term)
inline std::pair<std::int64_t, UniPoly> laurent_split(const SparseLaurentPoly& g) {
    std::int64_t m = g.min_exponent_in(0);
    UniPoly p;
    for (auto& [e, c] : g.terms()) {
        std::size_t k = static_cast<std::size_t>(e[0] - m);
        if (p.size() <= k) p.resize(k + 1, 0);
        p[k] = c;
    }
    uni_trim(p);
    return {m, p};
}

// multi-start damped Newton on a square k-variable system over the torus;
// converged points land in *points_out (heuristic, no completeness claim)
inline void multistart_torus_solve(const std::vector<SparseLaurentPoly>& eqs,
                                   const std::vector<SparseLaurentPoly>& jac, int k, int starts,
                                   std::uint64_t seed, double tol,
                                   std::vector<std::vector<std::complex<double>>>* points_out) {
    std::mt19937_64 rng(seed);
    auto rnd = [&]() { return (rng() >> 11) * (1.0 / 9007199254740992.0); };
    int m = static_cast<int>(eqs.size());
    for (int s = 0; s < starts; ++s) {
        std::vector<std::complex<double>> z(k);
        for (int i = 0; i < k; ++i) {
            double r = 0.3 + 1.7 * rnd();
            double a = 2 * 3.14159265358979323846 * rnd();
            z[i] = std::polar(r, a);
        }
        bool ok = false;
        for (int it = 0; it < 80; ++it) {
            Eigen::VectorXcd F(m);
            Eigen::MatrixXcd J(m, k);
            double resid = 0;
            for (int i = 0; i < m; ++i) {
                F(i) = eqs[i].evaluate(z);
                resid = std::max(resid, std::abs(F(i)));
                for (int j = 0; j < k; ++j) J(i, j) = jac[i * k + j].evaluate(z);
            }
            if (resid < tol) {
                ok = true;
                break;
            }
            Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(F);
            if (!step.allFinite()) break;
            double damp = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 8; ++bt) {
                std::vector<std::complex<double>> zn(k);
                bool off_torus = false;
                for (int i = 0; i < k; ++i) {
                    zn[i] = z[i] - damp * step(i);
                    if (std::abs(zn[i]) < 1e-12) off_torus = true;
                }
                double rn = 0;
                if (!off_torus)
                    for (int i = 0; i < m; ++i) rn = std::max(rn, std::abs(eqs[i].evaluate(zn)));
                if (!off_torus && rn < resid) {
                    z = zn;
                    moved = true;
                    break;
                }
                damp *= 0.5;
            }
            if (!moved) break;
        }
        if (ok && points_out) points_out->push_back(z);
    }
}

} // namespace facedetail

/// Critical values of a face function on the torus.
///  k = 0  : constants are everywhere-critical; the set is {c}, complete.
///  k = 1  : exact derivative numerator, roots by companion matrix with
///           polishing, rational roots sieved exactly; complete.
///  k >= 2 : multi-start numeric solve; flagged incomplete.
/// For type II faces the critical set is cut out by singular zeros of the
/// reduced numerator, so any critical value is 0 (and under non-degeneracy
/// there are none); this is exactly the runtime self-check the report runs.
inline CriticalValueSet face_critical_values(const FaceFunction& ff, double dedupe_tol = 1e-9,
                                             int starts = 48, std::uint64_t seed = 0) {
    ReducedFaceFunction red = reduce_face_function(ff);
    CriticalValueSet out;
    out.provenance = ff.key;
    out.complete = true;

    auto push_exact = [&](const Rat& v) {
        CriticalValue cv;
        cv.exact = v;
        cv.value = {rat_to_double(v), 0.0};
        cv.cert = Certification::ExactRational;
        out.values.push_back(cv);
    };

    if (ff.label == FaceType::TypeII) {
        // critical points require a singular torus zero of the reduced
        // numerator away from the denominator's zeros; any value is 0
        if (red.k == 0) return out; // nonzero constant over a monomial
        if (red.k == 1) {
            auto [sn, n0] = facedetail::laurent_split(red.num);
            auto [sd, d0] = facedetail::laurent_split(red.den);
            (void)sn;
            (void)sd;
            UniPoly m = uni_gcd(n0, uni_derivative(n0));
            if (uni_degree(m) > 0) {
                UniPoly g = uni_gcd(m, d0);
                if (uni_degree(m) > uni_degree(g)) {
                    CriticalValue cv;
                    cv.exact = Rat(0);
                    cv.value = {0.0, 0.0};
                    cv.cert = Certification::ExactRational;
                    out.values.push_back(cv);
                }
            }
            return out;
        }
        // k >= 2: heuristic search for singular torus zeros of the numerator
        SparseLaurentPoly num0 = facedetail::cleared(red.num);
        std::vector<SparseLaurentPoly> sys;
        sys.push_back(num0);
        for (int i = 0; i + 1 < red.k; ++i) sys.push_back(num0.partial_derivative(i));
        std::vector<SparseLaurentPoly> jac;
        for (auto& e : sys)
            for (int j = 0; j < red.k; ++j) jac.push_back(e.partial_derivative(j));
        std::vector<std::vector<std::complex<double>>> pts;
        facedetail::multistart_torus_solve(sys, jac, red.k, starts, seed, 1e-10, &pts);
        for (auto& z : pts) {
            bool singular = std::abs(num0.evaluate(z)) < 1e-7;
            for (int i = 0; i < red.k; ++i)
                if (std::abs(num0.partial_derivative(i).evaluate(z)) > 1e-7) singular = false;
            if (singular && std::abs(red.den.evaluate(z)) > 1e-8) {
                CriticalValue cv;
                cv.value = {0.0, 0.0};
                cv.cert = Certification::NumericHeuristic;
                out.values.push_back(cv);
                break;
            }
        }
        out.complete = false;
        out.notes.push_back("singular-zero search is heuristic for faces of dim >= 2");
        dedupe_critical_values(out, dedupe_tol);
        return out;
    }

    // type I
    if (red.k == 0) {
        Rat c = red.num.constant_value() / red.den.constant_value();
        push_exact(c);
        return out;
    }
    if (red.k == 1) {
        auto [sn, n0] = facedetail::laurent_split(red.num);
        auto [sd, d0] = facedetail::laurent_split(red.den);
        std::int64_t a = sn - sd; // r(s) = s^a n0(s)/d0(s)
        // dr/ds has numerator s^(a-1) * [a n d + s (n' d - n d')] / d^2
        UniPoly M = uni_sub(uni_mul(uni_derivative(n0), d0), uni_mul(n0, uni_derivative(d0)));
        M.insert(M.begin(), 0); // * s
        UniPoly crit = uni_mul(UniPoly{Rat(a)}, uni_mul(n0, d0));
        if (crit.size() < M.size()) crit.resize(M.size(), 0);
        for (std::size_t i = 0; i < M.size(); ++i) crit[i] += M[i];
        uni_trim(crit);
        auto eval_r_exact = [&](const Rat& s) {
            Rat nv = uni_eval_exact(n0, s), dv = uni_eval_exact(d0, s);
            Rat mono = 1, base = s;
            std::int64_t e = a >= 0 ? a : -a;
            for (std::int64_t i = 0; i < e; ++i) mono *= base;
            if (a < 0) mono = Rat(1) / mono;
            return mono * nv / dv;
        };
        if (crit.empty()) {
            // r is constant on the torus: every point is critical
            Rat s(1);
            while (uni_eval_exact(d0, s) == 0) s += 1;
            push_exact(eval_r_exact(s));
            out.notes.push_back("face function is constant on the torus");
            return out;
        }
        while (!crit.empty() && crit.front() == 0) crit.erase(crit.begin()); // s = 0 off torus
        if (uni_degree(crit) <= 0) return out; // derivative never vanishes on the torus
        auto roots = complex_roots(crit);
        for (auto& rt : roots) {
            if (rt.exact) {
                if (*rt.exact == 0) continue;
                if (uni_eval_exact(d0, *rt.exact) == 0) continue;
                push_exact(eval_r_exact(*rt.exact));
            } else {
                if (std::abs(rt.value) < 1e-12) continue;
                std::complex<double> dv = uni_eval(d0, rt.value);
                if (std::abs(dv) < 1e-12) continue;
                CriticalValue cv;
                cv.value = std::pow(rt.value, static_cast<double>(a)) *
                           uni_eval(n0, rt.value) / dv;
                cv.cert = Certification::NumericCertified;
                out.values.push_back(cv);
            }
        }
        dedupe_critical_values(out, dedupe_tol);
        return out;
    }
    // k >= 2: multi-start on the cleared critical system
    {
        std::vector<SparseLaurentPoly> sys;
        for (int i = 0; i < red.k; ++i) {
            auto e = red.den * red.num.partial_derivative(i) -
                     red.num * red.den.partial_derivative(i);
            sys.push_back(facedetail::cleared(e));
        }
        std::vector<SparseLaurentPoly> jac;
        for (auto& e : sys)
            for (int j = 0; j < red.k; ++j) jac.push_back(e.partial_derivative(j));
        std::vector<std::vector<std::complex<double>>> pts;
        facedetail::multistart_torus_solve(sys, jac, red.k, starts, seed, 1e-10, &pts);
        for (auto& z : pts) {
            if (std::abs(red.den.evaluate(z)) < 1e-10) continue;
            CriticalValue cv;
            cv.value = red.num.evaluate(z) / red.den.evaluate(z);
            cv.cert = Certification::NumericHeuristic;
            out.values.push_back(cv);
        }
        out.complete = false;
        out.notes.push_back("critical system solved by multi-start iteration; set may be incomplete");
        dedupe_critical_values(out, dedupe_tol);
        return out;
    }
}

/// Constants of the (necessarily constant) face functions at 0-dimensional
/// type I faces. Defined for n = 2; still computed for n > 2 with a note.
inline CriticalValueSet cf_values(const RationalFunction& f, const FaceClassification& cls) {
    CriticalValueSet out;
    out.provenance = "cf";
    out.complete = true;
    for (auto& cf : cls.faces) {
        if (cf.label != FaceType::TypeI) continue;
        const FaceRecord& face = cls.NF.faces()[cf.index];
        if (face.dim != 0) continue;
        auto pv = cls.NP.face_vertex_points(cls.NP.faces()[cf.decomposition.p_face_index]);
        auto qv = cls.NQ.face_vertex_points(cls.NQ.faces()[cf.decomposition.q_face_index]);
        if (pv.size() != 1 || qv.size() != 1 || pv[0] != qv[0])
            throw InternalError("0-dimensional type I face must decompose as a repeated point");
        Rat c = f.P.coefficient(pv[0]) / f.Q.coefficient(qv[0]);
        CriticalValue v;
        v.exact = c;
        v.value = {rat_to_double(c), 0.0};
        v.cert = Certification::ExactRational;
        out.values.push_back(v);
    }
    if (f.dimension() > 2)
        out.notes.push_back("constant-face values beyond two variables are an extrapolation");
    dedupe_critical_values(out, 1e-12);
    return out;
}

} // namespace polybif
