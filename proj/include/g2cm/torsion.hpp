#pragma once

#include <optional>

#include "g2cm/pairing.hpp"

namespace g2cm {

// Four independent ell-torsion points over F_{p^m} together with the
// antisymmetric, nonsingular matrix of Weil-pairing discrete logs.
struct TorsionBasis {
    u64 ell = 0;
    unsigned m = 0;  // field degree
    PairingContext ctx;
    std::array<MumfordDivisor, 4> pts;
    MatL gram;          // gram.a[i][j] = dlog_zeta e(pts[i], pts[j])
    FieldElement zeta;  // order-ell root of unity in ctx.E
};

// Full basis when the pairing Gram matrix reaches rank 4; otherwise the
// points found so far with their pairing-certified rank.
struct BasisOutcome {
    std::optional<TorsionBasis> basis;
    unsigned certified_rank = 0;
    std::vector<MumfordDivisor> points;
};

struct TorsionBudgets {
    unsigned samples = 1000;  // cofactor samples before SamplingBudgetExceeded
    unsigned stall = 96;      // consecutive non-progress samples before a rank report
};

// Idempotent of the Frobenius isotypic component cut out by the factor g of
// pbar = P mod ell, lifted to precision ell^B (coefficients of a degree-<4
// polynomial in the Frobenius).
std::array<Int, 4> component_idempotent(const WeilPolynomial& P, u64 ell, unsigned B,
                                        const Poly& g, const Poly& pbar);

// sum_j c_j * phi^j applied to a divisor
MumfordDivisor apply_endo_poly(const GenusTwoCurve& C, const std::array<Int, 4>& c,
                               const MumfordDivisor& D);

// Cofactor sample of exact order ell over F; nullopt when the budget ran
// out without hitting a nonzero point.
std::optional<MumfordDivisor> sample_ell_torsion_point(const GenusTwoCurve& C, FieldRef F,
                                                       u64 ell, const Int& cofactor,
                                                       unsigned ell_valuation, SeedStream& rng,
                                                       unsigned budget);

// Symplectic basis construction by cofactor sampling and hyperbolic-pair
// projection. Requires ell | jacobian_order(P, m).
BasisOutcome torsion_basis(const GenusTwoCurve& C, u64 ell, unsigned m, SeedStream rng,
                           const TorsionBudgets& budgets = {});

// coordinates of x in the basis, solved from gram^T c = dlogs and verified
// by exact reconstruction
std::array<u64, 4> coords_of(const TorsionBasis& B, const MumfordDivisor& x, SeedStream& rng);

struct FrobeniusMatrix {
    MatL M;
    unsigned m = 1;  // power of Frobenius represented
};

// Matrix of the p-power Frobenius on the basis; asserts charpoly(M) = P
// mod ell and det M = p^2 mod ell.
FrobeniusMatrix frobenius_matrix(const TorsionBasis& B, const WeilPolynomial& P,
                                 SeedStream& rng);

// 4 - rank(M^m - I): the F_ell-dimension of J(F_{p^m})[ell]
unsigned subgroup_rank(const FrobeniusMatrix& M, unsigned m);

struct OmegaConditions {
    bool omega_is_one;     // M^m = I
    bool omega_sq_is_one;  // M^{2m} = I
};
OmegaConditions omega_conditions(const FrobeniusMatrix& M, unsigned m);

// Least kappa with X^kappa = 1 in F_ell[X]/(P mod ell); the order of the
// companion matrix in GL_4(F_ell). Requires ell coprime to disc(P)
// (RamifiedCase otherwise; the measured variant is the fallback).
unsigned full_embedding_degree(const WeilPolynomial& P, u64 ell, unsigned cap = 10000);

// Rank over F_ell of (Frobenius^kappa - 1)/ell acting on J[ell]. The
// Tate-ratio realization of the Weil pairing is the true pairing composed
// with this operator; rank < 4 means the realized pairing is degenerate on
// part of J[ell] and basis construction cannot certify full rank.
unsigned ratio_twist_rank(const WeilPolynomial& P, u64 ell, unsigned kappa);

// Smallest candidate m whose basis construction reaches rank 4.
unsigned measured_full_embedding_degree(const GenusTwoCurve& C, u64 ell,
                                        std::vector<unsigned> candidates, SeedStream rng,
                                        const TorsionBudgets& budgets = {});

// Rank of J(F_{p^sub})[ell] measured by cofactor sampling over the subfield
// and coordinates against a full basis (sampling-based cross-check of the
// matrix rank).
unsigned measured_rational_rank(const TorsionBasis& B, unsigned sub, SeedStream rng,
                                unsigned samples = 24);

}  // namespace g2cm
