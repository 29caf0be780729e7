#include "g2cm/pairing.hpp"

#include <cmath>
#include <map>

namespace g2cm {

PairingContext make_pairing_context(const GenusTwoCurve& C, FieldRef W, u64 ell) {
    if (mod_u64(W->unit_group_order(), ell) != 0)
        throw RootsOfUnityMissing("ell does not divide |W^x|");
    unsigned n = W->degree();
    FieldRef E = Field::extension(W->characteristic(), 2 * n, 2 * n);
    return PairingContext{C, W, E, ell};
}

std::vector<CurvePoint> support_points(const PairingContext& ctx, const MumfordDivisor& D) {
    FieldRef E = ctx.E;
    const Poly u = poly_embed(D.u, E);
    const Poly v = poly_embed(D.v, E);
    std::vector<CurvePoint> pts;
    if (u.deg() == 0) return pts;
    if (u.deg() == 1) {
        FieldElement x = -u[0];
        pts.push_back(CurvePoint::affine(x, v.eval(x)));
        return pts;
    }
    // quadratic: roots via the discriminant (E contains them by construction)
    FieldElement u1 = u[1], u0 = u[0];
    FieldElement disc = u1 * u1 - (u0 + u0 + u0 + u0);
    auto root = field_sqrt(disc);
    if (!root) throw PairingFailure("quadratic does not split in evaluation field");
    FieldElement half = field_inv(E->from_u64(2));
    FieldElement xa = (-u1 + *root) * half;
    FieldElement xb = (-u1 - *root) * half;
    pts.push_back(CurvePoint::affine(xa, v.eval(xa)));
    pts.push_back(CurvePoint::affine(xb, v.eval(xb)));
    return pts;
}

namespace {

// product over the evaluation points of one Cantor step's functions,
// kept as a fraction to defer inversion
struct Fraction {
    FieldElement num, den;
};

void eval_trace(const PairingContext& ctx, const CantorTrace& tr,
                const std::vector<EvalPoint>& pts, Fraction& acc) {
    FieldRef E = ctx.E;
    Poly d = poly_embed(tr.d, E);
    bool d_trivial = d.deg() == 0 && d.is_one();
    std::vector<std::pair<Poly, Poly>> red;
    red.reserve(tr.red.size());
    for (const auto& [vb, ua] : tr.red) red.emplace_back(poly_embed(vb, E), poly_embed(ua, E));

    for (const EvalPoint& ep : pts) {
        FieldElement num = E->one(), den = E->one();
        if (!d_trivial) {
            FieldElement dv = d.eval(ep.P.x);
            if (dv.is_zero()) throw SupportCollision();
            num = num * dv;
        }
        for (const auto& [vb, ua] : red) {
            FieldElement top = ep.P.y - vb.eval(ep.P.x);
            FieldElement bot = ua.eval(ep.P.x);
            if (top.is_zero() || bot.is_zero()) throw SupportCollision();
            num = num * top;
            den = den * bot;
        }
        if (ep.sign > 0) {
            acc.num = acc.num * num;
            acc.den = acc.den * den;
        } else {
            acc.num = acc.num * den;
            acc.den = acc.den * num;
        }
    }
}

}  // namespace

FieldElement miller_eval(const PairingContext& ctx, const MumfordDivisor& x,
                         const std::vector<EvalPoint>& pts) {
    FieldRef E = ctx.E;
    for (const EvalPoint& ep : pts) {
        if (ep.P.infinity) throw SupportCollision("evaluation divisor touches infinity");
        if (ep.P.x.field() != E) throw FieldMismatch();
    }
    MumfordDivisor xe = x.field() == E ? x : embed_divisor(x, E);
    if (xe.is_identity()) return E->one();

    Fraction acc{E->one(), E->one()};
    MumfordDivisor R = xe;
    CantorTrace tr;
    int bits = 63 - __builtin_clzll(ctx.ell);
    for (int i = bits - 1; i >= 0; --i) {
        // square the accumulated function, then fold in the step functions
        acc.num = acc.num * acc.num;
        acc.den = acc.den * acc.den;
        R = cantor_add(ctx.C, R, R, &tr);
        eval_trace(ctx, tr, pts, acc);
        if ((ctx.ell >> i) & 1) {
            R = cantor_add(ctx.C, R, xe, &tr);
            eval_trace(ctx, tr, pts, acc);
        }
    }
    if (!R.is_identity()) throw NotTorsion("ell * x is not the identity");
    if (acc.num.is_zero() || acc.den.is_zero()) throw SupportCollision();
    return acc.num * field_inv(acc.den);
}

namespace {

// class representative of y with fresh weight-2 support: y ~ s - r
struct ShiftedRep {
    MumfordDivisor s, r;
};

ShiftedRep shifted_representative(const PairingContext& ctx, const MumfordDivisor& y,
                                  SeedStream& rng, unsigned tries = 64) {
    for (unsigned i = 0; i < tries; ++i) {
        MumfordDivisor yW = y.field() == ctx.W ? y : embed_divisor(y, ctx.W);
        MumfordDivisor r = random_divisor(ctx.C, ctx.W, rng);
        if (r.weight() != 2) continue;
        MumfordDivisor s = cantor_add(ctx.C, yW, r);
        if (s.weight() != 2) continue;
        return {s, r};
    }
    throw SupportExhausted("no balanced representative found");
}

}  // namespace

FieldElement tate_reduced(const PairingContext& ctx, const MumfordDivisor& x,
                          const MumfordDivisor& y, SeedStream& rng) {
    if (x.field() != ctx.W || y.field() != ctx.W) throw FieldMismatch();
    Int exponent = ctx.W->unit_group_order() / Int(static_cast<unsigned long>(ctx.ell));
    const unsigned kRetries = 32;
    for (unsigned attempt = 0; attempt < kRetries; ++attempt) {
        ShiftedRep rep = shifted_representative(ctx, y, rng);
        std::vector<EvalPoint> pts;
        for (const CurvePoint& P : support_points(ctx, rep.s)) pts.push_back({P, +1});
        for (const CurvePoint& P : support_points(ctx, rep.r)) pts.push_back({P, -1});
        try {
            FieldElement raw = miller_eval(ctx, x, pts);
            return field_pow(raw, exponent);
        } catch (const SupportCollision&) {
            continue;
        }
    }
    throw SupportExhausted("support collisions persisted across retries");
}

FieldElement weil(const PairingContext& ctx, const MumfordDivisor& x, const MumfordDivisor& y,
                  SeedStream& rng) {
    FieldElement a = tate_reduced(ctx, x, y, rng);
    FieldElement b = tate_reduced(ctx, y, x, rng);
    return a * field_inv(b);
}

u64 dlog_mu_ell(const FieldElement& zeta, const FieldElement& z, u64 ell) {
    FieldRef E = zeta.field();
    if (z.field() != E) throw FieldMismatch();
    u64 s = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(ell))));
    std::map<std::vector<u64>, u64> baby;
    FieldElement cur = E->one();
    for (u64 j = 0; j < s; ++j) {
        baby.emplace(cur.coeffs(), j);
        cur = cur * zeta;
    }
    // cur = zeta^s; giant step multiplies by zeta^{-s}
    FieldElement giant = field_inv(cur);
    FieldElement w = z;
    for (u64 i = 0; i * s <= ell; ++i) {
        auto it = baby.find(w.coeffs());
        if (it != baby.end()) return (i * s + it->second) % ell;
        w = w * giant;
    }
    throw DlogFailure("value not in the subgroup generated by zeta");
}

unsigned pairing_gram_rank(const PairingContext& ctx, const std::vector<MumfordDivisor>& S,
                           const std::vector<MumfordDivisor>& T, const FieldElement& zeta,
                           SeedStream& rng) {
    std::vector<std::vector<u64>> rows(S.size(), std::vector<u64>(T.size(), 0));
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = 0; j < T.size(); ++j)
            rows[i][j] = dlog_mu_ell(zeta, weil(ctx, S[i], T[j], rng), ctx.ell);
    return rank_mod_ell(std::move(rows), ctx.ell);
}

bool nondegenerate_on(const PairingContext& ctx, const std::vector<MumfordDivisor>& S,
                      const std::vector<MumfordDivisor>& T, unsigned rank_S, unsigned rank_T,
                      const FieldElement& zeta, SeedStream& rng) {
    unsigned r = pairing_gram_rank(ctx, S, T, zeta, rng);
    return r == rank_S && r == rank_T;
}

}  // namespace g2cm
