#pragma once

#include <cstdlib>
#include <vector>

#include "polybif/errors.hpp"
#include "polybif/exponent.hpp"
#include "polybif/rational.hpp"

namespace polybif {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;

inline Int ivec_dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int ivec_dot(const IVec& a, const ExponentVector& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Int(b[i]);
    return s;
}

inline bool ivec_is_zero(const IVec& a) {
    for (auto& x : a)
        if (x != 0) return false;
    return true;
}

inline IVec ivec_from_exp(const ExponentVector& e) {
    IVec v(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) v[i] = Int(e[i]);
    return v;
}

// divide by the gcd of the entries; direction is preserved
inline void primitivize(IVec& v) {
    Int g = 0;
    for (auto& x : v) g = int_gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
}

inline IVec ivec_scaled_sub(const IVec& a, const Int& ca, const IVec& b, const Int& cb) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ca * a[i] - cb * b[i];
    return r;
}

/// Row-echelon lattice basis of the row span of `rows` (unimodular row
/// operations only, so the row lattice is preserved). Pivot columns are
/// strictly increasing; returned rows are the nonzero ones.
inline IMat lattice_row_basis(IMat rows) {
    std::size_t m = rows.size();
    if (m == 0) return {};
    std::size_t ncols = rows[0].size();
    IMat out;
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < m; ++col) {
        // Euclidean elimination in this column over the active rows
        while (true) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i) {
                if (rows[i][col] == 0) continue;
                if (best == m || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            if (best == m) break; // column clear
            std::swap(rows[r], rows[best]);
            bool reduced_all = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rows[i][col] / rows[r][col];
                for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][col] != 0) reduced_all = false;
            }
            if (reduced_all) {
                if (rows[r][col] < 0)
                    for (std::size_t j = col; j < ncols; ++j) rows[r][j] = -rows[r][j];
                ++r;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < r; ++i) out.push_back(rows[i]);
    return out;
}

/// Express v as an integer combination of echelon basis rows. Throws if v is
/// not in the lattice (callers construct v from lattice members).
inline IVec lattice_coordinates(const IMat& basis, IVec v) {
    IVec x(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::size_t piv = 0;
        while (piv < basis[i].size() && basis[i][piv] == 0) ++piv;
        if (piv == basis[i].size()) throw InternalError("zero row in lattice basis");
        if (v[piv] % basis[i][piv] != 0)
            throw InternalError("point not in the difference lattice");
        Int q = v[piv] / basis[i][piv];
        x[i] = q;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * basis[i][j];
    }
    if (!ivec_is_zero(v)) throw InternalError("point outside lattice span");
    return x;
}

inline std::size_t rational_rank(std::vector<std::vector<Rat>> m) {
    std::size_t rank = 0, rows = m.size();
    if (rows == 0) return 0;
    std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline std::size_t integer_rank(const IMat& m) {
    std::vector<std::vector<Rat>> q(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        q[i] = std::vector<Rat>(m[i].begin(), m[i].end());
    return rational_rank(q);
}

/// Primitive integer basis of { u : B u = 0 } where B has full row rank.
inline IMat integer_kernel(const IMat& B) {
    if (B.empty()) return {};
    std::size_t d = B.size(), n = B[0].size();
    std::vector<std::vector<Rat>> m(d);
    for (std::size_t i = 0; i < d; ++i) m[i] = std::vector<Rat>(B[i].begin(), B[i].end());
    // reduced row echelon form
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < d; ++c) {
        std::size_t piv = r;
        while (piv < d && m[piv][c] == 0) ++piv;
        if (piv == d) continue;
        std::swap(m[r], m[piv]);
        Rat lead = m[r][c];
        for (std::size_t j = 0; j < n; ++j) m[r][j] /= lead;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    IMat kernel;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> u(n, 0);
        u[c] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) u[pivot_col[i]] = -m[i][c];
        // clear denominators with a positive factor
        Int l = 1;
        for (auto& x : u) l = l / int_gcd(l, denominator(x)) * denominator(x);
        IVec iv(n);
        for (std::size_t j = 0; j < n; ++j) iv[j] = numerator(u[j] * Rat(l));
        primitivize(iv);
        kernel.push_back(iv);
    }
    return kernel;
}

/// One particular solution of B u = w, scaled by a positive rational to a
/// primitive integer vector (so only the ray direction is canonical).
inline IVec solve_particular(const IMat& B, const IVec& w) {
    std::size_t d = B.size(), n = B[0].size();
    std::vector<std::vector<Rat>> m(d);
    for (std::size_t i = 0; i < d; ++i) {
        m[i] = std::vector<Rat>(B[i].begin(), B[i].end());
        m[i].push_back(Rat(w[i]));
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < d; ++c) {
        std::size_t piv = r;
        while (piv < d && m[piv][c] == 0) ++piv;
        if (piv == d) continue;
        std::swap(m[r], m[piv]);
        Rat lead = m[r][c];
        for (std::size_t j = 0; j <= n; ++j) m[r][j] /= lead;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = 0; j <= n; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < d; ++i)
        if (m[i][n] != 0) throw InternalError("inconsistent linear system in lift");
    std::vector<Rat> u(n, 0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) u[pivot_col[i]] = m[i][n];
    Int l = 1;
    for (auto& x : u) l = l / int_gcd(l, denominator(x)) * denominator(x);
    IVec iv(n);
    for (std::size_t j = 0; j < n; ++j) iv[j] = numerator(u[j] * Rat(l));
    primitivize(iv);
    return iv;
}

inline Int bareiss_determinant(IMat m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline IMat adjugate(const IMat& m) {
    std::size_t n = m.size();
    IMat adj(n, IVec(n));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IMat minor;
            minor.reserve(n - 1);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                IVec row;
                row.reserve(n - 1);
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            Int cof = bareiss_determinant(std::move(minor));
            adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

} // namespace polybif
