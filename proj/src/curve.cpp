#include "g2cm/curve.hpp"

#include <algorithm>
#include <sstream>

namespace g2cm {

Poly GenusTwoCurve::f_over(FieldRef F) const {
    if (F == base) return f;
    std::vector<u64> c;
    c.reserve(6);
    for (const FieldElement& e : f.coeffs()) c.push_back(e.coeffs()[0]);
    return Poly::from_u64(F, c);
}

GenusTwoCurve curve_new(const Int& p, const std::vector<Int>& coeffs) {
    if (p == 2) throw EvenCharacteristic();
    FieldRef F = Field::prime_field(p);
    if (coeffs.size() != 6 || coeffs[5] != 1) throw BadDegree();
    std::vector<FieldElement> c;
    c.reserve(6);
    for (const Int& v : coeffs) c.push_back(F->from_int(v));
    Poly f(F, std::move(c));
    if (f.deg() != 5) throw BadDegree();
    if (poly_gcd(f, f.derivative()).deg() != 0) throw NonSquarefree();
    return GenusTwoCurve{F, f};
}

bool MumfordDivisor::operator<(const MumfordDivisor& o) const {
    auto key = [](const MumfordDivisor& d) {
        std::vector<u64> k;
        k.push_back(static_cast<u64>(d.u.deg() + 1));
        for (const FieldElement& e : d.u.coeffs())
            for (u64 w : e.coeffs()) k.push_back(w);
        k.push_back(static_cast<u64>(d.v.deg() + 1));
        for (const FieldElement& e : d.v.coeffs())
            for (u64 w : e.coeffs()) k.push_back(w);
        return k;
    };
    return key(*this) < key(o);
}

std::string MumfordDivisor::str() const {
    std::ostringstream os;
    os << "(u=" << u.str() << ", v=" << v.str() << ")";
    return os.str();
}

MumfordDivisor mumford_identity(FieldRef F) {
    return MumfordDivisor{Poly::constant(F, F->one()), Poly(F)};
}

MumfordDivisor make_divisor(const GenusTwoCurve& C, Poly u, Poly v) {
    FieldRef F = u.field();
    if (v.field() != F) throw FieldMismatch();
    if (u.deg() < 0 || u.deg() > 2) throw BadDegree("deg u must be 0..2");
    if (!(u.lc() == F->one())) throw BadDegree("u must be monic");
    if (v.deg() >= u.deg()) throw BadDegree("deg v must be < deg u");
    Poly fF = C.f_over(F);
    if (!poly_mod(v * v - fF, u).is_zero()) throw Error("u does not divide v^2 - f");
    return MumfordDivisor{std::move(u), std::move(v)};
}

MumfordDivisor divisor_from_point(const GenusTwoCurve& C, const CurvePoint& P) {
    if (P.infinity) return mumford_identity(C.base);
    FieldRef F = P.x.field();
    Poly u(F, {-P.x, F->one()});
    Poly v = Poly::constant(F, P.y);
    return make_divisor(C, u, v);
}

MumfordDivisor divisor_from_points(const GenusTwoCurve& C, const CurvePoint& P1,
                                   const CurvePoint& P2) {
    if (P1.infinity) return divisor_from_point(C, P2);
    if (P2.infinity) return divisor_from_point(C, P1);
    FieldRef F = P1.x.field();
    if (P2.x.field() != F) throw FieldMismatch();
    if (P1.x == P2.x) {
        if (P1.y == P2.y) {
            // tangent double of one point; y must be nonzero
            if (P1.y.is_zero()) return mumford_identity(F);
            Poly u(F, {P1.x * P1.x, -(P1.x + P1.x), F->one()});
            Poly fF = C.f_over(F);
            FieldElement fp = fF.derivative().eval(P1.x);
            FieldElement slope = fp * field_inv(P1.y + P1.y);
            Poly v(F, {P1.y - slope * P1.x, slope});
            return make_divisor(C, u, v);
        }
        // opposite points cancel
        return mumford_identity(F);
    }
    Poly u(F, {P1.x * P2.x, -(P1.x + P2.x), F->one()});
    FieldElement slope = (P2.y - P1.y) * field_inv(P2.x - P1.x);
    Poly v(F, {P1.y - slope * P1.x, slope});
    return make_divisor(C, u, v);
}

namespace {

// semi-reduced composition; returns (u, v) with u possibly of degree up to 4
// and records the gcd polynomial d
std::pair<Poly, Poly> cantor_compose(const GenusTwoCurve& C, const MumfordDivisor& D1,
                                     const MumfordDivisor& D2, Poly& d_out) {
    FieldRef F = D1.field();
    Poly fF = C.f_over(F);
    const Poly &u1 = D1.u, &v1 = D1.v, &u2 = D2.u, &v2 = D2.v;
    XgcdResult e = poly_xgcd(u1, u2);                  // d0 = e1 u1 + e2 u2
    XgcdResult cdres = poly_xgcd(e.g, v1 + v2);        // d = c1 d0 + c2 (v1+v2)
    const Poly& d = cdres.g;
    Poly s1 = cdres.s * e.s;
    Poly s2 = cdres.s * e.t;
    const Poly& s3 = cdres.t;
    Poly u = poly_divexact(u1 * u2, d * d);
    Poly raw = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + fF);
    Poly v = poly_mod(poly_divexact(raw, d), u);
    d_out = d;
    return {u.monic(), v};
}

}  // namespace

MumfordDivisor cantor_add(const GenusTwoCurve& C, const MumfordDivisor& D1,
                          const MumfordDivisor& D2, CantorTrace* trace) {
    FieldRef F = D1.field();
    if (D2.field() != F) throw FieldMismatch();
    Poly d(F);
    auto [u, v] = cantor_compose(C, D1, D2, d);
    if (trace) {
        trace->d = d;
        trace->red.clear();
    }
    Poly fF = C.f_over(F);
    while (u.deg() > 2) {
        Poly u_next = poly_divexact(fF - v * v, u).monic();
        Poly v_next = poly_mod(-v, u_next);
        if (trace) trace->red.emplace_back(v, u_next);
        u = std::move(u_next);
        v = std::move(v_next);
    }
    return MumfordDivisor{u, v};
}

MumfordDivisor cantor_neg(const MumfordDivisor& D) {
    return MumfordDivisor{D.u, poly_mod(-D.v, D.u)};
}

MumfordDivisor scalar_mul(const GenusTwoCurve& C, const MumfordDivisor& D, const Int& n) {
    if (n < 0) return scalar_mul(C, cantor_neg(D), -n);
    MumfordDivisor acc = mumford_identity(D.field());
    size_t bits = bit_length(n);
    for (size_t i = bits; i-- > 0;) {
        acc = cantor_add(C, acc, acc);
        if (bit_at(n, i)) acc = cantor_add(C, acc, D);
    }
    return acc;
}

MumfordDivisor frobenius_map(const MumfordDivisor& D) {
    auto frob_poly = [](const Poly& a) {
        std::vector<FieldElement> c;
        c.reserve(a.coeffs().size());
        for (const FieldElement& e : a.coeffs()) c.push_back(frobenius_p(e));
        return Poly(a.field(), std::move(c));
    };
    return MumfordDivisor{frob_poly(D.u), frob_poly(D.v)};
}

CurvePoint random_point(const GenusTwoCurve& C, FieldRef F, SeedStream& rng, unsigned budget) {
    Poly fF = C.f_over(F);
    for (unsigned i = 0; i < budget; ++i) {
        FieldElement x = F->sample(rng);
        auto y = field_sqrt(fF.eval(x));
        if (!y) continue;
        FieldElement yy = *y;
        if (!yy.is_zero() && rng.coin()) yy = -yy;
        return CurvePoint::affine(x, yy);
    }
    throw SamplingBudgetExceeded("no curve point found");
}

MumfordDivisor random_divisor(const GenusTwoCurve& C, FieldRef F, SeedStream& rng,
                              unsigned budget) {
    Poly fF = C.f_over(F);
    for (unsigned i = 0; i < budget; ++i) {
        u64 mode = rng.below(8);
        if (mode == 0) {
            // weight-1 divisor from one point
            return divisor_from_point(C, random_point(C, F, rng, budget));
        }
        if (mode <= 4) {
            // weight-2 divisor from two rational points
            CurvePoint P1 = random_point(C, F, rng, budget);
            CurvePoint P2 = random_point(C, F, rng, budget);
            MumfordDivisor D = divisor_from_points(C, P1, P2);
            if (D.is_identity()) continue;
            return D;
        }
        // conjugate pair: random irreducible monic quadratic u, v from the
        // square root of f in F[x]/(u)
        FieldElement u1 = F->sample(rng), u0 = F->sample(rng);
        Poly u(F, {u0, u1, F->one()});
        FieldElement disc = u1 * u1 - (u0 + u0 + u0 + u0);
        if (is_square(disc)) continue;  // splits; rational modes cover it
        auto v = sqrt_mod_irreducible(fF, u);
        if (!v) continue;
        Poly vv = *v;
        if (!vv.is_zero() && rng.coin()) vv = -vv;
        return make_divisor(C, u, vv);
    }
    throw SamplingBudgetExceeded("no divisor found");
}

std::vector<MumfordDivisor> enumerate_jacobian(const GenusTwoCurve& C, FieldRef F,
                                               const Int& bound) {
    if (F->order() > bound) throw EnumerationBoundExceeded();
    u64 q = to_u64(F->order());
    Poly fF = C.f_over(F);
    std::vector<MumfordDivisor> out;
    out.push_back(mumford_identity(F));

    // weight 1: u = x - a with f(a) a square
    for (u64 ca = 0; ca < q; ++ca) {
        FieldElement a = F->from_counter(Int(static_cast<unsigned long>(ca)));
        auto y = field_sqrt(fF.eval(a));
        if (!y) continue;
        Poly u(F, {-a, F->one()});
        out.push_back(MumfordDivisor{u, Poly::constant(F, *y)});
        if (!y->is_zero()) out.push_back(MumfordDivisor{u, Poly::constant(F, -*y)});
    }

    // weight 2: for each monic quadratic u solve v^2 = f (mod u)
    for (u64 c1 = 0; c1 < q; ++c1) {
        FieldElement u1 = F->from_counter(Int(static_cast<unsigned long>(c1)));
        for (u64 c0 = 0; c0 < q; ++c0) {
            FieldElement u0 = F->from_counter(Int(static_cast<unsigned long>(c0)));
            Poly u(F, {u0, u1, F->one()});
            FieldElement disc = u1 * u1 - (u0 + u0 + u0 + u0);
            auto sq = field_sqrt(disc);
            std::vector<Poly> vs;
            if (!sq) {
                // u irreducible: quotient is a field
                auto v = sqrt_mod_irreducible(fF, u);
                if (v && v->deg() == 1) {
                    vs.push_back(*v);
                    vs.push_back(-*v);
                } else if (v && v->deg() <= 0) {
                    // v in F covers the conjugate pair of points (a, v), (a^q, v)
                    vs.push_back(*v);
                    if (!v->is_zero()) vs.push_back(-*v);
                }
            } else if (!sq->is_zero()) {
                // u = (x-a)(x-b), a != b: combine square roots at each root
                FieldElement half = field_inv(F->from_u64(2));
                FieldElement a = (-u1 + *sq) * half;
                FieldElement b = (-u1 - *sq) * half;
                auto ya = field_sqrt(fF.eval(a));
                auto yb = field_sqrt(fF.eval(b));
                if (ya && yb) {
                    std::vector<FieldElement> yas = {*ya}, ybs = {*yb};
                    if (!ya->is_zero()) yas.push_back(-*ya);
                    if (!yb->is_zero()) ybs.push_back(-*yb);
                    FieldElement dinv = field_inv(a - b);
                    for (const FieldElement& pa : yas) {
                        for (const FieldElement& pb : ybs) {
                            FieldElement slope = (pa - pb) * dinv;
                            Poly v(F, {pa - slope * a, slope});
                            vs.push_back(v);
                        }
                    }
                }
            } else {
                // u = (x-a)^2: tangent lift, needs f(a) != 0
                FieldElement half = field_inv(F->from_u64(2));
                FieldElement a = -u1 * half;
                FieldElement fa = fF.eval(a);
                if (!fa.is_zero()) {
                    auto ya = field_sqrt(fa);
                    if (ya) {
                        for (FieldElement y0 : {*ya, -*ya}) {
                            FieldElement slope =
                                fF.derivative().eval(a) * field_inv(y0 + y0);
                            Poly v(F, {y0 - slope * a, slope});
                            vs.push_back(v);
                        }
                    }
                }
            }
            for (Poly& v : vs) out.push_back(MumfordDivisor{u, std::move(v)});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MumfordDivisor embed_divisor(const MumfordDivisor& D, FieldRef dst) {
    return MumfordDivisor{poly_embed(D.u, dst), poly_embed(D.v, dst)};
}

}  // namespace g2cm
