#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polybif/linalg.hpp"
#include "polybif/poly.hpp"

namespace polybif {

/// A face of a lattice polytope. `normal_generators` generate the closed
/// normal cone { u : the supporting face by u contains this face } under the
/// minimizing convention d^u = min <u,.>. `witness_u` supports exactly this
/// face; it is absent only for a full-dimensional polytope's improper face.
struct FaceRecord {
    std::vector<int> vertex_indices; // sorted, into LatticePolytope::vertices()
    int dim = 0;
    IMat normal_generators;
    std::optional<IVec> witness_u;
};

namespace hulldetail {

struct Facet {
    IVec normal;               // primitive, reduced coordinates; d^normal attained on facet
    Int offset;                // min value of <normal, .> over the polytope
    std::vector<int> incident; // point indices lying on the facet hyperplane
};

struct Ray {
    IVec r;
    std::vector<std::uint64_t> zero; // bitset over constraint indices
};

inline bool bit_get(const std::vector<std::uint64_t>& b, std::size_t i) {
    return (b[i >> 6] >> (i & 63)) & 1u;
}
inline void bit_set(std::vector<std::uint64_t>& b, std::size_t i) {
    b[i >> 6] |= std::uint64_t(1) << (i & 63);
}
inline bool bits_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    // a subset of b
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

/// Facet enumeration for a full-dimensional point configuration in Z^d
/// (double description run on the polar of the homogenization). Exact; the
/// combinatorial adjacency test keeps it robust for degenerate inputs.
inline std::vector<Facet> enumerate_facets(const std::vector<IVec>& pts, std::size_t d) {
    std::size_t m = pts.size();
    std::vector<IVec> cons(m); // g_i = (x_i, 1)
    for (std::size_t i = 0; i < m; ++i) {
        cons[i] = pts[i];
        cons[i].push_back(1);
    }
    // greedy choice of d+1 linearly independent constraints
    std::vector<std::size_t> init;
    IMat acc;
    for (std::size_t i = 0; i < m && init.size() < d + 1; ++i) {
        acc.push_back(cons[i]);
        if (integer_rank(acc) == acc.size())
            init.push_back(i);
        else
            acc.pop_back();
    }
    if (init.size() != d + 1) throw InternalError("point set not full-dimensional");

    std::size_t words = (m + 63) / 64;
    auto make_zero_bits = [&](const IVec& r, std::size_t upto_count,
                              const std::vector<std::size_t>& order) {
        std::vector<std::uint64_t> z(words, 0);
        for (std::size_t k = 0; k < upto_count; ++k)
            if (ivec_dot(cons[order[k]], r) == 0) bit_set(z, order[k]);
        return z;
    };

    // processing order: the independent seed first, then the rest
    std::vector<std::size_t> order = init;
    std::vector<bool> used(m, false);
    for (auto i : init) used[i] = true;
    for (std::size_t i = 0; i < m; ++i)
        if (!used[i]) order.push_back(i);

    IMat M;
    for (auto i : init) M.push_back(cons[i]);
    Int det = bareiss_determinant(M);
    IMat adj = adjugate(M);
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < d + 1; ++j) {
        IVec r(d + 1);
        for (std::size_t i = 0; i < d + 1; ++i) r[i] = det < 0 ? -adj[i][j] : adj[i][j];
        primitivize(r);
        rays.push_back({std::move(r), {}});
    }
    for (auto& ray : rays) ray.zero = make_zero_bits(ray.r, d + 1, order);

    for (std::size_t step = d + 1; step < m; ++step) {
        const IVec& g = cons[order[step]];
        std::vector<Int> s(rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            s[i] = ivec_dot(g, rays[i].r);
            if (s[i] < 0) any_neg = true;
        }
        if (!any_neg) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (s[i] == 0) bit_set(rays[i].zero, order[step]);
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (s[i] < 0) continue;
            Ray keep = rays[i];
            if (s[i] == 0) bit_set(keep.zero, order[step]);
            next.push_back(std::move(keep));
        }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (s[i] <= 0) continue;
            for (std::size_t j = 0; j < rays.size(); ++j) {
                if (s[j] >= 0) continue;
                // combinatorial adjacency: no third ray's zero set contains
                // the common zero set of i and j
                std::vector<std::uint64_t> common(words);
                for (std::size_t w = 0; w < words; ++w)
                    common[w] = rays[i].zero[w] & rays[j].zero[w];
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size(); ++k) {
                    if (k == i || k == j) continue;
                    if (bits_subset(common, rays[k].zero)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                IVec nr = ivec_scaled_sub(rays[j].r, s[i], rays[i].r, s[j]);
                primitivize(nr);
                Ray combo{std::move(nr), {}};
                combo.zero = make_zero_bits(combo.r, step + 1, order);
                next.push_back(std::move(combo));
            }
        }
        rays = std::move(next);
    }

    std::vector<Facet> facets;
    std::set<IVec> seen;
    for (auto& ray : rays) {
        IVec normal(ray.r.begin(), ray.r.end() - 1);
        if (ivec_is_zero(normal)) throw InternalError("degenerate facet normal");
        Int offset = -ray.r.back();
        if (!seen.insert(ray.r).second) continue;
        Facet f{std::move(normal), std::move(offset), {}};
        for (std::size_t i = 0; i < m; ++i)
            if (ivec_dot(f.normal, pts[i]) == f.offset) f.incident.push_back(static_cast<int>(i));
        facets.push_back(std::move(f));
    }
    std::sort(facets.begin(), facets.end(),
              [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
    return facets;
}

struct Reduction {
    IVec origin;      // reference point
    IMat basis;       // lattice basis of the difference lattice, row echelon
    std::vector<IVec> reduced; // integer coordinates of the points w.r.t. basis
};

inline Reduction reduce_affine(const std::vector<IVec>& pts) {
    Reduction red;
    red.origin = pts[0];
    IMat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        IVec d(pts[i].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - red.origin[j];
        diffs.push_back(std::move(d));
    }
    red.basis = lattice_row_basis(std::move(diffs));
    for (auto& p : pts) {
        IVec d(p.size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = p[j] - red.origin[j];
        red.reduced.push_back(red.basis.empty() ? IVec{} : lattice_coordinates(red.basis, d));
    }
    return red;
}

// recursively records every face as (sorted point-index subset, dim)
inline void collect_faces(const std::vector<IVec>& pts, std::vector<int> subset,
                          std::map<std::vector<int>, int>& out) {
    std::sort(subset.begin(), subset.end());
    std::vector<IVec> sub;
    sub.reserve(subset.size());
    for (int i : subset) sub.push_back(pts[i]);
    Reduction red = reduce_affine(sub);
    int dim = static_cast<int>(red.basis.size());
    auto [it, inserted] = out.emplace(subset, dim);
    if (!inserted) return;
    if (dim == 0) return;
    auto facets = enumerate_facets(red.reduced, dim);
    for (auto& f : facets) {
        std::vector<int> child;
        child.reserve(f.incident.size());
        for (int local : f.incident) child.push_back(subset[local]);
        collect_faces(pts, std::move(child), out);
    }
}

} // namespace hulldetail

/// Lattice polytope with its full face lattice and exact normal-cone data.
/// Construction is exact throughout; lower-dimensional polytopes are handled
/// by reducing to integer coordinates on the affine hull first.
class LatticePolytope {
public:
    int ambient_dimension() const { return n_; }
    int dim() const { return dim_; }
    const std::vector<ExponentVector>& vertices() const { return vertices_; }
    const std::vector<FaceRecord>& faces() const { return faces_; }
    const FaceRecord& whole_face() const { return faces_[whole_index_]; }
    int whole_face_index() const { return whole_index_; }

    const FaceRecord& face_by_vertex_set(const std::vector<int>& sorted_ids) const {
        auto it = face_lookup_.find(sorted_ids);
        if (it == face_lookup_.end())
            throw InternalError("argmin vertex set is not a face of the polytope");
        return faces_[it->second];
    }

    int face_index_by_vertex_set(const std::vector<int>& sorted_ids) const {
        auto it = face_lookup_.find(sorted_ids);
        if (it == face_lookup_.end())
            throw InternalError("vertex set is not a face of the polytope");
        return it->second;
    }

    /// d^u = min over vertices of <u, v> together with the argmin face.
    std::pair<Rat, int> support_data_index(const std::vector<Rat>& u) const {
        bool all_zero = true;
        for (auto& x : u)
            if (x != 0) all_zero = false;
        if (all_zero) throw std::invalid_argument("support_data: u must be nonzero");
        Rat best = 0;
        bool first = true;
        std::vector<Rat> vals(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            Rat s = 0;
            for (int j = 0; j < n_; ++j) s += u[j] * Rat(vertices_[i][j]);
            vals[i] = s;
            if (first || s < best) {
                best = s;
                first = false;
            }
        }
        std::vector<int> arg;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vals[i] == best) arg.push_back(static_cast<int>(i));
        return {best, face_index_by_vertex_set(arg)};
    }

    std::pair<Rat, int> support_data_index(const IVec& u) const {
        std::vector<Rat> ur(u.begin(), u.end());
        return support_data_index(ur);
    }

    Rat support_value(const IVec& u) const {
        Rat best = 0;
        bool first = true;
        for (auto& v : vertices_) {
            Rat s(ivec_dot(u, v));
            if (first || s < best) {
                best = s;
                first = false;
            }
        }
        return best;
    }

    std::vector<ExponentVector> face_vertex_points(const FaceRecord& f) const {
        std::vector<ExponentVector> out;
        out.reserve(f.vertex_indices.size());
        for (int i : f.vertex_indices) out.push_back(vertices_[i]);
        return out;
    }

    friend LatticePolytope hull_of_points(int n, std::vector<ExponentVector> points);

private:
    int n_ = 0;
    int dim_ = 0;
    int whole_index_ = 0;
    std::vector<ExponentVector> vertices_;
    std::vector<FaceRecord> faces_;
    std::map<std::vector<int>, int> face_lookup_;
};

inline LatticePolytope hull_of_points(int n, std::vector<ExponentVector> points) {
    if (points.empty()) throw std::invalid_argument("hull of empty point set");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<IVec> pts;
    pts.reserve(points.size());
    for (auto& p : points) pts.push_back(ivec_from_exp(p));

    hulldetail::Reduction red = hulldetail::reduce_affine(pts);
    int d = static_cast<int>(red.basis.size());

    // face lattice as point-index subsets
    std::map<std::vector<int>, int> face_sets;
    std::vector<int> all(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) all[i] = static_cast<int>(i);
    hulldetail::collect_faces(pts, all, face_sets);

    std::vector<hulldetail::Facet> top_facets;
    if (d > 0) top_facets = hulldetail::enumerate_facets(red.reduced, d);

    // vertices = 0-dimensional faces
    std::vector<int> vertex_points;
    for (auto& [subset, fdim] : face_sets)
        if (fdim == 0) vertex_points.push_back(subset[0]);
    std::sort(vertex_points.begin(), vertex_points.end(),
              [&](int a, int b) { return points[a] < points[b]; });
    std::vector<int> point_to_vertex(points.size(), -1);
    LatticePolytope poly;
    poly.n_ = n;
    poly.dim_ = d;
    for (std::size_t i = 0; i < vertex_points.size(); ++i) {
        point_to_vertex[vertex_points[i]] = static_cast<int>(i);
        poly.vertices_.push_back(points[vertex_points[i]]);
    }

    // lineality generators of every normal cone when the polytope is deficient
    IMat kernel;
    if (d < n) {
        if (d == 0) {
            for (int i = 0; i < n; ++i) {
                IVec e(n, 0);
                e[i] = 1;
                kernel.push_back(e);
            }
        } else {
            kernel = integer_kernel(red.basis);
        }
    }

    struct Pending {
        std::vector<int> vertex_ids;
        int dim;
        std::vector<int> point_subset;
    };
    std::vector<Pending> pend;
    for (auto& [subset, fdim] : face_sets) {
        std::vector<int> ids;
        for (int p : subset)
            if (point_to_vertex[p] >= 0) ids.push_back(point_to_vertex[p]);
        std::sort(ids.begin(), ids.end());
        pend.push_back({std::move(ids), fdim, subset});
    }
    std::sort(pend.begin(), pend.end(), [](const Pending& a, const Pending& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertex_ids < b.vertex_ids;
    });

    for (auto& pe : pend) {
        FaceRecord rec;
        rec.vertex_indices = pe.vertex_ids;
        rec.dim = pe.dim;
        IVec reduced_sum(static_cast<std::size_t>(d), 0);
        bool proper = pe.dim < d;
        if (d > 0) {
            std::set<int> pset(pe.point_subset.begin(), pe.point_subset.end());
            for (auto& f : top_facets) {
                bool contains = true;
                std::set<int> inc(f.incident.begin(), f.incident.end());
                for (int p : pe.point_subset)
                    if (!inc.count(p)) {
                        contains = false;
                        break;
                    }
                if (!contains) continue;
                IVec lifted = solve_particular(red.basis, f.normal);
                rec.normal_generators.push_back(lifted);
                for (int i = 0; i < d; ++i) reduced_sum[i] += f.normal[i];
            }
        }
        for (auto& k : kernel) {
            rec.normal_generators.push_back(k);
            IVec neg(k.size());
            for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
            rec.normal_generators.push_back(neg);
        }
        if (proper) {
            IVec w = solve_particular(red.basis, reduced_sum);
            rec.witness_u = w;
        } else if (d < n) {
            rec.witness_u = kernel[0];
        }
        poly.face_lookup_[rec.vertex_indices] = static_cast<int>(poly.faces_.size());
        if (!proper) poly.whole_index_ = static_cast<int>(poly.faces_.size());
        poly.faces_.push_back(std::move(rec));
    }
    return poly;
}

inline LatticePolytope newton_polytope(const SparseLaurentPoly& g) {
    if (g.is_zero()) throw std::invalid_argument("newton polytope of the zero polynomial");
    return hull_of_points(g.dimension(), g.support());
}

inline LatticePolytope minkowski_sum(const LatticePolytope& A, const LatticePolytope& B) {
    if (A.ambient_dimension() != B.ambient_dimension())
        throw std::invalid_argument("minkowski sum: ambient dimension mismatch");
    std::vector<ExponentVector> sums;
    sums.reserve(A.vertices().size() * B.vertices().size());
    for (auto& a : A.vertices())
        for (auto& b : B.vertices()) sums.push_back(exp_add(a, b));
    return hull_of_points(A.ambient_dimension(), std::move(sums));
}

/// A face gamma of N(f) together with the unique faces of N(P) and N(Q)
/// summing to it.
struct FaceDecomposition {
    int gamma_index = -1;
    int p_face_index = -1;
    int q_face_index = -1;
};

/// Vector in the relative interior of the face's normal cone, distinct from
/// the stored witness (used for the independence cross-check).
inline std::optional<IVec> second_interior_vector(const FaceRecord& f) {
    if (f.normal_generators.empty()) return std::nullopt;
    IVec sum(f.normal_generators[0].size(), 0);
    for (std::size_t i = 0; i < f.normal_generators.size(); ++i)
        for (std::size_t j = 0; j < sum.size(); ++j)
            sum[j] += Int(static_cast<long>(i + 1)) * f.normal_generators[i][j];
    if (ivec_is_zero(sum)) {
        // lineality-only cone; any nonzero member works
        return f.normal_generators[0];
    }
    primitivize(sum);
    return sum;
}

inline FaceDecomposition decompose_face(const LatticePolytope& NF, int face_idx,
                                        const LatticePolytope& NP, const LatticePolytope& NQ) {
    const FaceRecord& gamma = NF.faces()[face_idx];
    if (!gamma.witness_u)
        throw std::invalid_argument("decompose_face: face has no supporting vector");
    const IVec& u = *gamma.witness_u;
    auto [dp, pi] = NP.support_data_index(u);
    auto [dq, qi] = NQ.support_data_index(u);
    auto second = second_interior_vector(gamma);
    if (second && *second != u) {
        auto [dp2, pi2] = NP.support_data_index(*second);
        auto [dq2, qi2] = NQ.support_data_index(*second);
        if (pi2 != pi || qi2 != qi)
            throw InternalError("face decomposition depends on the supporting vector");
    }
    // the decomposition must sum back to the face
    {
        std::vector<ExponentVector> sums;
        for (auto& a : NP.face_vertex_points(NP.faces()[pi]))
            for (auto& b : NQ.face_vertex_points(NQ.faces()[qi])) sums.push_back(exp_add(a, b));
        LatticePolytope s = hull_of_points(NF.ambient_dimension(), sums);
        std::vector<ExponentVector> got = s.vertices();
        std::vector<ExponentVector> want = NF.face_vertex_points(gamma);
        std::sort(want.begin(), want.end());
        if (got != want) throw InternalError("face decomposition does not sum to the face");
    }
    return FaceDecomposition{face_idx, pi, qi};
}

} // namespace polybif
