#pragma once

#include <utility>
#include <vector>

#include "polybif/errors.hpp"
#include "polybif/poly.hpp"

namespace polybif {

/// Multivariate exact division (throws if the division is not exact).
/// Used for the known-exact divisions inside the subresultant scheme.
inline SparseLaurentPoly exact_divide(const SparseLaurentPoly& a, const SparseLaurentPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("exact_divide: division by zero polynomial");
    if (a.is_zero()) return SparseLaurentPoly(a.dimension());
    SparseLaurentPoly r = a, q(a.dimension());
    const auto& bl = *b.terms().rbegin(); // graded-lex leading term
    while (!r.is_zero()) {
        const auto& rl = *r.terms().rbegin();
        ExponentVector e = exp_sub(rl.first, bl.first);
        for (auto v : e)
            if (v < 0) throw InternalError("exact_divide: inexact division");
        Rat c = rl.second / bl.second;
        SparseLaurentPoly t = SparseLaurentPoly::monomial(a.dimension(), e, c);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

/// View in one variable: coefficient polynomials indexed by the exponent of
/// `var` (the coefficients have exponent 0 there).
inline std::vector<SparseLaurentPoly> univariate_view(const SparseLaurentPoly& p, int var) {
    std::vector<SparseLaurentPoly> coeffs;
    if (p.is_zero()) return coeffs;
    std::int64_t d = p.degree_in(var);
    if (p.min_exponent_in(var) < 0)
        throw std::invalid_argument("univariate_view: negative exponent in the main variable");
    coeffs.assign(static_cast<std::size_t>(d) + 1, SparseLaurentPoly(p.dimension()));
    for (auto& [e, c] : p.terms()) {
        ExponentVector rest = e;
        std::int64_t k = rest[var];
        rest[var] = 0;
        coeffs[static_cast<std::size_t>(k)].add_term(rest, c);
    }
    return coeffs;
}

inline SparseLaurentPoly from_univariate_view(const std::vector<SparseLaurentPoly>& coeffs,
                                              int var, int n) {
    SparseLaurentPoly p(n);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (auto& [e, c] : coeffs[k].terms()) {
            ExponentVector full = e;
            full[var] += static_cast<std::int64_t>(k);
            p.add_term(full, c);
        }
    return p;
}

inline std::int64_t degree_in_var(const SparseLaurentPoly& p, int var) {
    return p.degree_in(var);
}

inline SparseLaurentPoly leading_coeff_in(const SparseLaurentPoly& p, int var) {
    if (p.is_zero()) return SparseLaurentPoly(p.dimension());
    std::int64_t d = p.degree_in(var);
    SparseLaurentPoly lc(p.dimension());
    for (auto& [e, c] : p.terms())
        if (e[var] == d) {
            ExponentVector rest = e;
            rest[var] = 0;
            lc.add_term(rest, c);
        }
    return lc;
}

inline SparseLaurentPoly var_power(int n, int var, std::int64_t k) {
    ExponentVector e(n, 0);
    e[var] = k;
    return SparseLaurentPoly::monomial(n, e, 1);
}

inline SparseLaurentPoly poly_pow(const SparseLaurentPoly& p, std::int64_t k) {
    SparseLaurentPoly acc = SparseLaurentPoly::constant(p.dimension(), 1);
    for (std::int64_t i = 0; i < k; ++i) acc = acc * p;
    return acc;
}

/// Pseudo-remainder: the remainder of lc(B)^(deg A - deg B + 1) * A by B,
/// computed without fractions.
inline SparseLaurentPoly pseudo_remainder(const SparseLaurentPoly& A, const SparseLaurentPoly& B,
                                          int var) {
    std::int64_t dB = B.degree_in(var);
    if (dB < 0) throw std::invalid_argument("pseudo_remainder: zero divisor");
    SparseLaurentPoly lB = leading_coeff_in(B, var);
    SparseLaurentPoly R = A;
    std::int64_t e = A.degree_in(var) - dB + 1;
    while (!R.is_zero() && R.degree_in(var) >= dB) {
        SparseLaurentPoly lR = leading_coeff_in(R, var);
        SparseLaurentPoly shift = var_power(A.dimension(), var, R.degree_in(var) - dB);
        R = lB * R - lR * shift * B;
        --e;
    }
    if (e > 0) R = poly_pow(lB, e) * R;
    return R;
}

/// Resultant with respect to `var`, by the subresultant pseudo-remainder
/// sequence (exact over the polynomial coefficient ring).
inline SparseLaurentPoly resultant(SparseLaurentPoly A, SparseLaurentPoly B, int var) {
    int n = A.dimension();
    auto zero = SparseLaurentPoly(n);
    if (A.is_zero() || B.is_zero()) return zero;
    std::int64_t dA = A.degree_in(var), dB = B.degree_in(var);
    int sign = 1;
    if (dA < dB) {
        std::swap(A, B);
        std::swap(dA, dB);
        if ((dA & 1) && (dB & 1)) sign = -sign;
    }
    if (dB == 0) {
        // Res(A, b) = b^{deg A}
        SparseLaurentPoly r = poly_pow(B, dA);
        return sign < 0 ? -r : r;
    }
    SparseLaurentPoly g = SparseLaurentPoly::constant(n, 1);
    SparseLaurentPoly h = SparseLaurentPoly::constant(n, 1);
    while (true) {
        std::int64_t da = A.degree_in(var), db = B.degree_in(var);
        std::int64_t delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        SparseLaurentPoly R = pseudo_remainder(A, B, var);
        A = B;
        SparseLaurentPoly denom = g * poly_pow(h, delta);
        B = R.is_zero() ? R : exact_divide(R, denom);
        if (B.is_zero()) return zero; // positive-degree common factor
        g = leading_coeff_in(A, var);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_divide(poly_pow(g, delta), poly_pow(h, delta - 1));
        }
        if (B.degree_in(var) == 0) {
            std::int64_t dlast = A.degree_in(var);
            SparseLaurentPoly num = poly_pow(B, dlast);
            SparseLaurentPoly res =
                dlast <= 1 ? num : exact_divide(num, poly_pow(h, dlast - 1));
            return sign < 0 ? -res : res;
        }
    }
}

/// Content with respect to `var`: gcd of the coefficient polynomials. Only
/// implemented where the coefficients are univariate or constant, which
/// covers the bivariate pipeline.
SparseLaurentPoly gcd_bivariate(const SparseLaurentPoly& a, const SparseLaurentPoly& b);

namespace gcddetail {

inline int single_variable_of(const SparseLaurentPoly& p) {
    int var = -1;
    for (auto& [e, c] : p.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) {
                if (var < 0) var = static_cast<int>(i);
                if (var != static_cast<int>(i)) return -2; // more than one variable
            }
    return var; // -1 when constant
}

// gcd of two polynomials that involve at most one (common) variable
inline SparseLaurentPoly gcd_single_var(SparseLaurentPoly a, SparseLaurentPoly b) {
    int n = a.dimension();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int va = single_variable_of(a), vb = single_variable_of(b);
    if (va == -2 || vb == -2) throw InternalError("gcd_single_var: multivariate input");
    if (va == -1 || vb == -1) return SparseLaurentPoly::constant(n, 1);
    if (va != vb) return SparseLaurentPoly::constant(n, 1);
    int v = va;
    // euclidean algorithm with primitive renormalization each step
    auto normalize = [&](SparseLaurentPoly p) {
        Rat c = p.content();
        if (c != 0 && c != 1) p = Rat(1) / c * p;
        if (p.leading_coefficient() < 0) p = -p;
        return p;
    };
    a = normalize(a);
    b = normalize(b);
    while (!b.is_zero()) {
        SparseLaurentPoly r = pseudo_remainder(a, b, v);
        a = b;
        b = normalize(r);
    }
    return normalize(a);
}

inline SparseLaurentPoly content_in(const SparseLaurentPoly& p, int var) {
    auto coeffs = univariate_view(p, var);
    SparseLaurentPoly g(p.dimension());
    for (auto& c : coeffs) {
        if (c.is_zero()) continue;
        g = gcd_single_var(g, c);
        if (g.is_constant() && g.constant_value() == 1) break;
    }
    return g;
}

} // namespace gcddetail

/// Exact gcd of two bivariate polynomials over Q, normalized to primitive
/// integer form with positive leading coefficient.
inline SparseLaurentPoly gcd_bivariate_in(const SparseLaurentPoly& a, const SparseLaurentPoly& b,
                                          int main_var) {
    using gcddetail::content_in;
    using gcddetail::gcd_single_var;
    int n = a.dimension();
    auto normalize = [&](SparseLaurentPoly p) {
        Rat c = p.content();
        if (c != 0 && c != 1) p = Rat(1) / c * p;
        if (p.leading_coefficient() < 0) p = -p;
        return p;
    };
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    std::int64_t da = a.degree_in(main_var), db = b.degree_in(main_var);
    if (da == 0 || db == 0) {
        // one argument does not involve the main variable
        SparseLaurentPoly ca = da == 0 ? a : content_in(a, main_var);
        SparseLaurentPoly cb = db == 0 ? b : content_in(b, main_var);
        return normalize(gcd_single_var(ca, cb));
    }
    SparseLaurentPoly contA = content_in(a, main_var);
    SparseLaurentPoly contB = content_in(b, main_var);
    SparseLaurentPoly A = exact_divide(a, contA);
    SparseLaurentPoly B = exact_divide(b, contB);
    if (A.degree_in(main_var) < B.degree_in(main_var)) std::swap(A, B);
    SparseLaurentPoly g = SparseLaurentPoly::constant(n, 1);
    SparseLaurentPoly h = SparseLaurentPoly::constant(n, 1);
    while (true) {
        std::int64_t delta = A.degree_in(main_var) - B.degree_in(main_var);
        SparseLaurentPoly R = pseudo_remainder(A, B, main_var);
        if (R.is_zero()) {
            SparseLaurentPoly pp = exact_divide(B, content_in(B, main_var));
            SparseLaurentPoly cont_gcd = gcd_single_var(contA, contB);
            return normalize(cont_gcd * pp);
        }
        A = B;
        B = exact_divide(R, g * poly_pow(h, delta));
        g = leading_coeff_in(A, main_var);
        if (delta == 1) h = g;
        else if (delta > 1) h = exact_divide(poly_pow(g, delta), poly_pow(h, delta - 1));
        if (B.degree_in(main_var) == 0) {
            // coprime primitive parts
            return normalize(gcd_single_var(contA, contB));
        }
    }
}

inline SparseLaurentPoly gcd_bivariate(const SparseLaurentPoly& a, const SparseLaurentPoly& b) {
    return gcd_bivariate_in(a, b, 0);
}

/// Primitive integer normalization with positive graded-lex leading
/// coefficient (the canonical form used for resultant outputs).
inline SparseLaurentPoly primitive_normalize(SparseLaurentPoly p) {
    if (p.is_zero()) return p;
    Rat c = p.content();
    if (c != 1) p = Rat(1) / c * p;
    if (p.leading_coefficient() < 0) p = -p;
    return p;
}

} // namespace polybif
