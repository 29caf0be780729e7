#pragma once

#include <vector>

#include "g2cm/curve.hpp"
#include "g2cm/zeta.hpp"

namespace g2cm {

// Working field W (contains mu_ell and every point involved) plus the
// evaluation field E, the quadratic extension of W over which every
// monic quadratic u splits. All pairing values live in E.
struct PairingContext {
    GenusTwoCurve C;
    FieldRef W = nullptr;
    FieldRef E = nullptr;
    u64 ell = 0;
};

PairingContext make_pairing_context(const GenusTwoCurve& C, FieldRef W, u64 ell);

// signed evaluation point (multiplicity +1 / -1, repeated for higher ones)
struct EvalPoint {
    CurvePoint P;  // affine, over ctx.E
    int sign;
};

// f_x evaluated at the formal sum of points; div(f_x) = ell * x.
// Throws SupportCollision if any step function hits a zero/pole and
// NotTorsion if x is not killed by ell.
FieldElement miller_eval(const PairingContext& ctx, const MumfordDivisor& x,
                         const std::vector<EvalPoint>& pts);

// Reduced Tate pairing e(x, ybar) = f_x(y')^{(|W^x|)/ell}; the class
// representative y' is re-randomized on support collisions.
FieldElement tate_reduced(const PairingContext& ctx, const MumfordDivisor& x,
                          const MumfordDivisor& y, SeedStream& rng);

// Weil pairing as the ratio of reduced Tate pairings.
FieldElement weil(const PairingContext& ctx, const MumfordDivisor& x,
                  const MumfordDivisor& y, SeedStream& rng);

// discrete log in mu_ell = <zeta> by baby-step giant-step
u64 dlog_mu_ell(const FieldElement& zeta, const FieldElement& z, u64 ell);

// splits the affine support of a reduced divisor into points over ctx.E
std::vector<CurvePoint> support_points(const PairingContext& ctx, const MumfordDivisor& D);

// Rank of the |S| x |T| matrix of pairing dlogs; nondegenerate_on is true
// iff that rank equals the span ranks of both sides (supplied by the
// caller, who knows the relation spaces of the generators).
unsigned pairing_gram_rank(const PairingContext& ctx, const std::vector<MumfordDivisor>& S,
                           const std::vector<MumfordDivisor>& T, const FieldElement& zeta,
                           SeedStream& rng);
bool nondegenerate_on(const PairingContext& ctx, const std::vector<MumfordDivisor>& S,
                      const std::vector<MumfordDivisor>& T, unsigned rank_S, unsigned rank_T,
                      const FieldElement& zeta, SeedStream& rng);

}  // namespace g2cm
