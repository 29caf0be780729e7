#include "g2cm/torsion.hpp"

#include <sstream>

#include "g2cm/cmfield.hpp"

namespace g2cm {

std::optional<MumfordDivisor> sample_ell_torsion_point(const GenusTwoCurve& C, FieldRef F,
                                                       u64 ell, const Int& cofactor,
                                                       unsigned ell_valuation, SeedStream& rng,
                                                       unsigned budget) {
    Int ell_i(static_cast<unsigned long>(ell));
    for (unsigned i = 0; i < budget; ++i) {
        MumfordDivisor D = random_divisor(C, F, rng);
        MumfordDivisor Q = scalar_mul(C, D, cofactor);
        if (Q.is_identity()) continue;
        // reduce to exact order ell (guards against ell^2 components)
        for (unsigned j = 0; j < ell_valuation; ++j) {
            MumfordDivisor R = scalar_mul(C, Q, ell_i);
            if (R.is_identity()) return Q;
            Q = std::move(R);
        }
        throw Error("cofactor point has unexpected order");
    }
    return std::nullopt;
}

namespace {

MumfordDivisor combine(const GenusTwoCurve& C, const MumfordDivisor& x, u64 s,
                       const MumfordDivisor& a, u64 t, const MumfordDivisor& b) {
    MumfordDivisor acc = x;
    if (s) acc = cantor_add(C, acc, scalar_mul(C, a, Int(static_cast<unsigned long>(s))));
    if (t) acc = cantor_add(C, acc, scalar_mul(C, b, Int(static_cast<unsigned long>(t))));
    return acc;
}

// ---- Frobenius isotypic projectors --------------------------------------
//
// Cofactor points reduced to exact order ell live in the deepest cyclic
// factors of the ell-Sylow group, which can make whole directions of J[ell]
// nearly invisible to sampling. The Sylow module splits under the
// idempotents of Z_ell[X]/(P) (P is the Frobenius charpoly and P mod ell is
// squarefree on unramified instances); projecting a sample onto each
// component before the order reduction reaches every direction directly.

// degree-<4 polynomials with coefficients mod ell^B, reduced mod the Weil
// polynomial; just enough arithmetic for Hensel idempotent lifting
struct ModulusRing {
    Int q;                    // ell^B
    std::array<Int, 5> P;     // monic quartic, c0..c4

    std::array<Int, 4> reduce(std::vector<Int> c) const {
        while (c.size() > 4) {
            size_t k = c.size() - 1;  // X^k = -sum_j P[j] X^{k-4+j}
            Int top = c[k] % q;
            if (top != 0) {
                for (int j = 0; j < 4; ++j)
                    c[k - 4 + j] = (c[k - 4 + j] - top * P[j]) % q;
            }
            c.pop_back();
        }
        std::array<Int, 4> out{0, 0, 0, 0};
        for (size_t i = 0; i < c.size(); ++i) {
            out[i] = c[i] % q;
            if (out[i] < 0) out[i] += q;
        }
        return out;
    }

    std::array<Int, 4> mul(const std::array<Int, 4>& a, const std::array<Int, 4>& b) const {
        std::vector<Int> c(7, Int(0));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) c[i + j] += a[i] * b[j];
        return reduce(std::move(c));
    }
};

}  // namespace

// idempotent of the factor g: lift e = u * (Pbar/g) from mod ell to mod ell^B
std::array<Int, 4> component_idempotent(const WeilPolynomial& P, u64 ell, unsigned B,
                                        const Poly& g, const Poly& pbar) {
    Poly cofac = poly_divexact(pbar, g);
    XgcdResult x = poly_xgcd(cofac, g);
    if (x.g.deg() != 0) throw Error("charpoly factors are not coprime");
    // u * cofac is 1 mod g and 0 mod the cofactor: the mod-ell idempotent
    Poly u = x.s.scaled(field_inv(x.g[0]));
    Poly e0 = poly_mod(u * cofac, pbar);
    ModulusRing R;
    R.q = Int(static_cast<unsigned long>(ell));
    auto pc = P.coeffs();
    for (int i = 0; i < 5; ++i) R.P[i] = pc[i];
    std::array<Int, 4> e{0, 0, 0, 0};
    for (int i = 0; i <= e0.deg(); ++i)
        e[i] = Int(static_cast<unsigned long>(e0[i].coeffs()[0]));
    unsigned prec = 1;
    while (prec < B) {
        prec *= 2;
        mpz_pow_ui(R.q.get_mpz_t(), Int(static_cast<unsigned long>(ell)).get_mpz_t(),
                   std::min(prec, B));
        // e <- 3e^2 - 2e^3
        auto e2 = R.mul(e, e);
        auto e3 = R.mul(e2, e);
        for (int i = 0; i < 4; ++i) {
            e[i] = (3 * e2[i] - 2 * e3[i]) % R.q;
            if (e[i] < 0) e[i] += R.q;
        }
    }
    return e;
}

// evaluate an endomorphism polynomial sum c_j * phi^j at a divisor
MumfordDivisor apply_endo_poly(const GenusTwoCurve& C, const std::array<Int, 4>& c,
                               const MumfordDivisor& D) {
    MumfordDivisor acc = mumford_identity(D.field());
    MumfordDivisor phi_j = D;
    for (int j = 0; j < 4; ++j) {
        if (c[j] != 0) acc = cantor_add(C, acc, scalar_mul(C, phi_j, c[j]));
        if (j < 3) phi_j = frobenius_map(phi_j);
    }
    return acc;
}

BasisOutcome torsion_basis(const GenusTwoCurve& C, u64 ell, unsigned m, SeedStream rng,
                           const TorsionBudgets& budgets) {
    if (mod_u64(C.base->characteristic(), ell) == 0) throw BadPrime("ell divides p");
    WeilPolynomial P = weil_polynomial(C);
    if (valuation(jacobian_order(P, m), ell) == 0)
        throw Error("ell does not divide the Jacobian order");

    FieldRef W = Field::extension(C.base->characteristic(), m, std::max(m, 1u));
    PairingContext ctx = make_pairing_context(C, W, ell);

    // Sampling runs over every subfield level d | m whose Jacobian has
    // ell-torsion, and (on unramified instances) over the Frobenius isotypic
    // components at each level. Both mixes counter the depth skew of plain
    // cofactor sampling.
    struct Level {
        FieldRef F;
        Int cofactor;
        unsigned v;
    };
    std::vector<Level> levels;
    for (unsigned d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        Int Nd = jacobian_order(P, d);
        unsigned vd = valuation(Nd, ell);
        if (vd == 0) continue;
        Int cof = Nd;
        for (unsigned i = 0; i < vd; ++i) cof /= static_cast<unsigned long>(ell);
        FieldRef Fd = d == m ? W : Field::extension(C.base->characteristic(), d, d);
        levels.push_back(Level{Fd, cof, vd});
    }

    std::vector<std::array<Int, 4>> projectors;
    {
        auto cl = charpoly_mod(P, ell, 1);
        FieldRef Fl = Field::prime_field(Int(static_cast<unsigned long>(ell)));
        Poly pbar = Poly::from_u64(Fl, {cl[0], cl[1], cl[2], cl[3], cl[4]});
        if (poly_gcd(pbar, pbar.derivative()).deg() == 0) {
            unsigned B = valuation(jacobian_order(P, m), ell);
            auto factors = factor_squarefree(pbar, rng.fork("edf"));
            if (factors.size() > 1) {
                for (const Poly& g : factors)
                    projectors.push_back(component_idempotent(P, ell, B, g, pbar));
            }
        }
    }

    struct Draw {
        size_t level;
        int comp;  // -1: plain cofactor sample
    };
    std::vector<Draw> draws;
    for (size_t li = levels.size(); li-- > 0;) {
        draws.push_back({li, -1});
        for (size_t c = 0; c < projectors.size(); ++c)
            draws.push_back({li, static_cast<int>(c)});
    }

    Int ell_int(static_cast<unsigned long>(ell));
    unsigned used = 0;
    size_t next_draw = 0;
    auto sample = [&]() -> std::optional<MumfordDivisor> {
        while (used < budgets.samples) {
            ++used;
            const Draw& dr = draws[next_draw];
            next_draw = (next_draw + 1) % draws.size();
            const Level& lvl = levels[dr.level];
            MumfordDivisor D = random_divisor(C, lvl.F, rng);
            MumfordDivisor Q = scalar_mul(C, D, lvl.cofactor);
            if (dr.comp >= 0) Q = apply_endo_poly(C, projectors[dr.comp], Q);
            if (Q.is_identity()) continue;
            bool reduced = false;
            for (unsigned j = 0; j < lvl.v && !reduced; ++j) {
                MumfordDivisor R = scalar_mul(C, Q, ell_int);
                if (R.is_identity())
                    reduced = true;
                else
                    Q = std::move(R);
            }
            if (!reduced) throw Error("cofactor point has unexpected order");
            return lvl.F == W ? Q : embed_divisor(Q, W);
        }
        return std::nullopt;
    };

    BasisOutcome out;

    // first hyperbolic pair
    auto a1 = sample();
    if (!a1) throw SamplingBudgetExceeded("no nonzero ell-torsion point found");
    out.points.push_back(*a1);
    out.certified_rank = 1;

    std::optional<MumfordDivisor> b1;
    FieldElement zeta;
    for (unsigned stall = 0; stall < budgets.stall;) {
        auto x = sample();
        if (!x) break;
        FieldElement z = weil(ctx, *a1, *x, rng);
        if (!(z == ctx.E->one())) {
            b1 = *x;
            zeta = z;
            break;
        }
        ++stall;
    }
    if (!b1) return out;  // pairing-certified rank 1
    out.points.push_back(*b1);
    out.certified_rank = 2;

    // project samples into the orthogonal complement of <a1, b1>
    auto project = [&](const MumfordDivisor& x) {
        u64 t = dlog_mu_ell(zeta, weil(ctx, x, *a1, rng), ell);
        u64 s = (ell - dlog_mu_ell(zeta, weil(ctx, x, *b1, rng), ell)) % ell;
        return combine(C, x, s, *a1, t, *b1);
    };

    std::optional<MumfordDivisor> a2;
    for (unsigned stall = 0; stall < budgets.stall;) {
        auto x = sample();
        if (!x) break;
        MumfordDivisor xp = project(*x);
        if (!xp.is_identity()) {
            a2 = xp;
            break;
        }
        ++stall;
    }
    if (!a2) return out;  // rank 2 (e.g. m = k below the full embedding degree)
    out.points.push_back(*a2);
    out.certified_rank = 3;

    std::optional<MumfordDivisor> b2;
    for (unsigned stall = 0; stall < budgets.stall;) {
        auto y = sample();
        if (!y) break;
        MumfordDivisor yp = project(*y);
        if (yp.is_identity()) {
            ++stall;
            continue;
        }
        FieldElement z = weil(ctx, *a2, yp, rng);
        if (!(z == ctx.E->one())) {
            b2 = yp;
            break;
        }
        ++stall;
    }
    if (!b2) return out;  // rank 3
    out.points.push_back(*b2);
    out.certified_rank = 4;

    TorsionBasis B;
    B.ell = ell;
    B.m = m;
    B.ctx = ctx;
    B.pts = {*a1, *b1, *a2, *b2};
    B.zeta = zeta;
    B.gram = MatL::zero(ell);
    Int ell_i(static_cast<unsigned long>(ell));
    for (int i = 0; i < 4; ++i) {
        // exact order ell
        if (B.pts[i].is_identity()) throw Error("basis point is the identity");
        if (!scalar_mul(C, B.pts[i], ell_i).is_identity())
            throw Error("basis point order is not ell");
        for (int j = i + 1; j < 4; ++j) {
            u64 d = dlog_mu_ell(zeta, weil(ctx, B.pts[i], B.pts[j], rng), ell);
            B.gram.a[i][j] = d;
            B.gram.a[j][i] = d == 0 ? 0 : ell - d;
        }
    }
    if (matl_det(B.gram) == 0) throw PairingFailure("gram matrix is singular");
    out.basis = std::move(B);
    return out;
}

std::array<u64, 4> coords_of(const TorsionBasis& B, const MumfordDivisor& x, SeedStream& rng) {
    const PairingContext& ctx = B.ctx;
    MumfordDivisor xW = x.field() == ctx.W ? x : embed_divisor(x, ctx.W);
    std::array<u64, 4> rhs;
    for (int j = 0; j < 4; ++j)
        rhs[j] = dlog_mu_ell(B.zeta, weil(ctx, xW, B.pts[j], rng), B.ell);
    std::array<u64, 4> c = matl_solve(matl_transpose(B.gram), rhs);
    // verify the reconstruction exactly
    const GenusTwoCurve& C = ctx.C;
    MumfordDivisor acc = mumford_identity(ctx.W);
    for (int i = 0; i < 4; ++i) {
        if (c[i] == 0) continue;
        acc = cantor_add(C, acc, scalar_mul(C, B.pts[i], Int(static_cast<unsigned long>(c[i]))));
    }
    if (!(acc == xW)) throw NotInSpan("reconstruction failed");
    return c;
}

FrobeniusMatrix frobenius_matrix(const TorsionBasis& B, const WeilPolynomial& P,
                                 SeedStream& rng) {
    MatL M = MatL::zero(B.ell);
    for (int i = 0; i < 4; ++i) {
        std::array<u64, 4> col = coords_of(B, frobenius_map(B.pts[i]), rng);
        for (int r = 0; r < 4; ++r) M.a[r][i] = col[r];
    }
    std::array<u64, 5> want = charpoly_mod(P, B.ell, 1);
    std::array<u64, 5> got = matl_charpoly(M);
    if (want != got) {
        std::ostringstream os;
        os << "charpoly(M) differs from the Weil polynomial mod " << B.ell;
        throw CharpolyMismatch(os.str());
    }
    u64 p2 = mod_u64(P.p * P.p, B.ell);
    if (matl_det(M) != p2) throw CharpolyMismatch("det M != p^2 mod ell");
    return FrobeniusMatrix{M, 1};
}

unsigned subgroup_rank(const FrobeniusMatrix& M, unsigned m) {
    MatL Mm = matl_pow(M.M, Int(static_cast<unsigned long>(m)));
    return 4 - matl_rank(matl_sub(Mm, MatL::identity(M.M.ell)));
}

OmegaConditions omega_conditions(const FrobeniusMatrix& M, unsigned m) {
    MatL Mm = matl_pow(M.M, Int(static_cast<unsigned long>(m)));
    MatL M2m = matl_mul(Mm, Mm);
    MatL I = MatL::identity(M.M.ell);
    return OmegaConditions{Mm == I, M2m == I};
}

unsigned full_embedding_degree(const WeilPolynomial& P, u64 ell, unsigned cap) {
    if (mod_u64(P.p, ell) == 0) throw BadPrime("ell divides p");
    QuarticPolynomial q{-P.a1, P.a2, -P.p * P.a1, P.p * P.p};
    if (ell_ramification(q, ell) == Ramification::Indeterminate)
        throw RamifiedCase("ell divides disc(P)");
    auto cl = charpoly_mod(P, ell, 1);
    MatL X = companion_matl(cl, ell);
    MatL h = X;
    MatL I = MatL::identity(ell);
    for (unsigned kappa = 1; kappa <= cap; ++kappa) {
        if (h == I) return kappa;
        h = matl_mul(h, X);
    }
    throw CapExceeded("order of Frobenius mod ell exceeds the cap");
}

unsigned ratio_twist_rank(const WeilPolynomial& P, u64 ell, unsigned kappa) {
    Int ell2(static_cast<unsigned long>(ell));
    ell2 *= static_cast<unsigned long>(ell);
    Mat4 ck = mat4_pow(companion_int(P), kappa);
    MatL T = MatL::zero(ell);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Int e = ck[i][j] - ((i == j) ? 1 : 0);
            Int r = e % ell2;
            if (r < 0) r += ell2;
            if (mod_u64(r, ell) != 0) throw Error("Frobenius^kappa != 1 mod ell");
            T.a[i][j] = mod_u64(r / static_cast<unsigned long>(ell), ell);
        }
    return matl_rank(T);
}

unsigned measured_full_embedding_degree(const GenusTwoCurve& C, u64 ell,
                                        std::vector<unsigned> candidates, SeedStream rng,
                                        const TorsionBudgets& budgets) {
    std::sort(candidates.begin(), candidates.end());
    WeilPolynomial P = weil_polynomial(C);
    for (unsigned m : candidates) {
        if (m == 0) continue;
        if (valuation(jacobian_order(P, m), ell) == 0) continue;
        // full rationality of J[ell] forces mu_ell into the field, so a
        // candidate without it cannot be the full embedding degree
        if (mod_u64(int_pow(C.base->characteristic(), m) - 1, ell) != 0) continue;
        std::ostringstream os;
        os << "measured-kappa-m" << m;
        BasisOutcome out = torsion_basis(C, ell, m, rng.fork(os.str()), budgets);
        if (out.basis) return m;
    }
    throw NoCandidateWorked();
}

unsigned measured_rational_rank(const TorsionBasis& B, unsigned sub, SeedStream rng,
                                unsigned samples) {
    const GenusTwoCurve& C = B.ctx.C;
    if (B.m % sub != 0) throw IncompatibleTower();
    FieldRef Fsub = sub == 1 ? C.base
                             : Field::extension(C.base->characteristic(), sub, sub);
    WeilPolynomial P = weil_polynomial(C);
    Int N = jacobian_order(P, sub);
    unsigned v = valuation(N, B.ell);
    if (v == 0) return 0;
    Int cofactor = N;
    for (unsigned i = 0; i < v; ++i) cofactor /= static_cast<unsigned long>(B.ell);
    std::vector<std::vector<u64>> rows;
    for (unsigned i = 0; i < samples; ++i) {
        auto Q = sample_ell_torsion_point(C, Fsub, B.ell, cofactor, v, rng, 50);
        if (!Q) continue;
        auto c = coords_of(B, embed_divisor(*Q, B.ctx.W), rng);
        rows.push_back({c[0], c[1], c[2], c[3]});
    }
    return rank_mod_ell(std::move(rows), B.ell);
}

}  // namespace g2cm
