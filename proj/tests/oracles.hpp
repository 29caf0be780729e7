#pragma once

// Test-only oracles, kept independent of the library's optimized paths.

#include <map>
#include <vector>

#include "g2cm/curve.hpp"
#include "g2cm/pairing.hpp"

namespace g2cm::oracle {

// Literal scan of all (u, v) pairs with u monic of degree <= 2, deg v < deg u
// and u | v^2 - f. Exponential in the field size; fine for |F| <= ~50.
inline std::vector<MumfordDivisor> brute_enumerate(const GenusTwoCurve& C, FieldRef F) {
    u64 q = to_u64(F->order());
    Poly fF = C.f_over(F);
    std::vector<MumfordDivisor> out;
    out.push_back(mumford_identity(F));
    auto elem = [&](u64 i) { return F->from_counter(Int(static_cast<unsigned long>(i))); };
    // deg u = 1
    for (u64 a = 0; a < q; ++a) {
        Poly u(F, {elem(a), F->one()});
        for (u64 b = 0; b < q; ++b) {
            Poly v = Poly::constant(F, elem(b));
            if (poly_mod(v * v - fF, u).is_zero()) out.push_back(MumfordDivisor{u, v});
        }
    }
    // deg u = 2
    for (u64 u1 = 0; u1 < q; ++u1)
        for (u64 u0 = 0; u0 < q; ++u0) {
            Poly u(F, {elem(u0), elem(u1), F->one()});
            for (u64 v1 = 0; v1 < q; ++v1)
                for (u64 v0 = 0; v0 < q; ++v0) {
                    Poly v(F, {elem(v0), elem(v1)});
                    if (poly_mod(v * v - fF, u).is_zero()) out.push_back(MumfordDivisor{u, v});
                }
        }
    return out;
}

// Functions on the curve of the form (a(x) + b(x) y) / (c(x) + d(x) y),
// multiplied symbolically using y^2 = f(x). Used to rebuild the Miller
// function by explicit composition and compare values.
struct CurveFunction {
    Poly na, nb, da, db;  // numerator a + b y, denominator c + d y

    static CurveFunction one(FieldRef F) {
        Poly o = Poly::constant(F, F->one());
        return {o, Poly(F), o, Poly(F)};
    }
};

inline std::pair<Poly, Poly> hy_mul(const Poly& a1, const Poly& b1, const Poly& a2,
                                    const Poly& b2, const Poly& f) {
    // (a1 + b1 y)(a2 + b2 y) with y^2 = f
    return {a1 * a2 + b1 * b2 * f, a1 * b2 + b1 * a2};
}

inline CurveFunction fn_mul(const CurveFunction& x, const CurveFunction& y, const Poly& f) {
    auto [na, nb] = hy_mul(x.na, x.nb, y.na, y.nb, f);
    auto [da, db] = hy_mul(x.da, x.db, y.da, y.db, f);
    return {na, nb, da, db};
}

// multiply by the step function d(x) * prod (y - v_i(x)) / u_i'(x)
inline CurveFunction fn_mul_trace(const CurveFunction& x, const CantorTrace& tr, const Poly& f) {
    CurveFunction out = x;
    FieldRef F = f.field();
    if (tr.d.deg() > 0) {
        out.na = out.na * tr.d;
        out.nb = out.nb * tr.d;
    }
    for (const auto& [vb, ua] : tr.red) {
        // numerator *= (y - vb); denominator *= ua
        auto [na, nb] = hy_mul(out.na, out.nb, -vb, Poly::constant(F, F->one()), f);
        out.na = na;
        out.nb = nb;
        out.da = out.da * ua;
        out.db = out.db * ua;
    }
    return out;
}

// f_x built by explicit function composition along the double-and-add chain
inline CurveFunction miller_function_symbolic(const GenusTwoCurve& C, const MumfordDivisor& x,
                                              u64 ell) {
    FieldRef F = x.field();
    Poly f = C.f_over(F);
    CurveFunction acc = CurveFunction::one(F);
    MumfordDivisor R = x;
    CantorTrace tr;
    int bits = 63 - __builtin_clzll(ell);
    for (int i = bits - 1; i >= 0; --i) {
        acc = fn_mul(acc, acc, f);
        R = cantor_add(C, R, R, &tr);
        acc = fn_mul_trace(acc, tr, f);
        if ((ell >> i) & 1) {
            R = cantor_add(C, R, x, &tr);
            acc = fn_mul_trace(acc, tr, f);
        }
    }
    return acc;
}

inline FieldElement fn_eval(const CurveFunction& fn, const CurvePoint& P, FieldRef E) {
    Poly na = poly_embed(fn.na, E), nb = poly_embed(fn.nb, E);
    Poly da = poly_embed(fn.da, E), db = poly_embed(fn.db, E);
    FieldElement num = na.eval(P.x) + nb.eval(P.x) * P.y;
    FieldElement den = da.eval(P.x) + db.eval(P.x) * P.y;
    if (den.is_zero()) throw SupportCollision("oracle pole");
    return num * field_inv(den);
}

}  // namespace g2cm::oracle
