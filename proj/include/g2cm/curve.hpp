#pragma once

#include <optional>
#include <vector>

#include "g2cm/polynomial.hpp"

namespace g2cm {

// y^2 = f(x) with f monic of degree 5 over F_p (one point at infinity).
struct GenusTwoCurve {
    FieldRef base;  // prime field
    Poly f;         // over base

    // f with coefficients lifted into F (prime-subfield constants)
    Poly f_over(FieldRef F) const;
};

// Validates p (odd prime), degree/monicity and squarefreeness.
// coeffs: c0..c5 of f = c5 x^5 + ... + c0. Must have c5 = 1.
GenusTwoCurve curve_new(const Int& p, const std::vector<Int>& coeffs);

struct CurvePoint {
    bool infinity = true;
    FieldElement x, y;

    static CurvePoint at_infinity() { return CurvePoint{}; }
    static CurvePoint affine(FieldElement px, FieldElement py) {
        return CurvePoint{false, std::move(px), std::move(py)};
    }
};

// Reduced Mumford pair: u monic, deg u <= 2, deg v < deg u, u | v^2 - f.
struct MumfordDivisor {
    Poly u, v;

    FieldRef field() const { return u.field(); }
    int weight() const { return u.deg(); }
    bool is_identity() const { return u.deg() == 0; }
    bool operator==(const MumfordDivisor& o) const { return u == o.u && v == o.v; }
    bool operator!=(const MumfordDivisor& o) const { return !(*this == o); }
    // strict ordering for sets/tables
    bool operator<(const MumfordDivisor& o) const;
    std::string str() const;
};

MumfordDivisor mumford_identity(FieldRef F);
// validates the Mumford invariants against the curve
MumfordDivisor make_divisor(const GenusTwoCurve& C, Poly u, Poly v);
MumfordDivisor divisor_from_point(const GenusTwoCurve& C, const CurvePoint& P);
MumfordDivisor divisor_from_points(const GenusTwoCurve& C, const CurvePoint& P1,
                                   const CurvePoint& P2);

// Functions picked up by the composition/reduction steps of one Cantor
// addition: D1 + D2 = D3 + div(d) + sum div((y - v_i)/u_i'). Miller's loop
// evaluates these at the evaluation divisor.
struct CantorTrace {
    Poly d;                                   // composition gcd (an x-polynomial)
    std::vector<std::pair<Poly, Poly>> red;   // (v_before, u_after) per reduction
};

MumfordDivisor cantor_add(const GenusTwoCurve& C, const MumfordDivisor& D1,
                          const MumfordDivisor& D2, CantorTrace* trace = nullptr);
MumfordDivisor cantor_neg(const MumfordDivisor& D);
MumfordDivisor scalar_mul(const GenusTwoCurve& C, const MumfordDivisor& D, const Int& n);
// coefficient-wise p-power (base-field Frobenius relative to F_p)
MumfordDivisor frobenius_map(const MumfordDivisor& D);

// Random point with x in F and f(x) square; deterministic under the stream.
CurvePoint random_point(const GenusTwoCurve& C, FieldRef F, SeedStream& rng,
                        unsigned budget = 10000);

// Weight-1, rational weight-2 or conjugate weight-2 divisor, mixed so that
// sampled classes cover the whole Jacobian.
MumfordDivisor random_divisor(const GenusTwoCurve& C, FieldRef F, SeedStream& rng,
                              unsigned budget = 10000);

// All reduced Mumford pairs over F (the Jacobian as a set).
// Guarded: |F| must stay below the bound.
std::vector<MumfordDivisor> enumerate_jacobian(const GenusTwoCurve& C, FieldRef F,
                                               const Int& bound = Int(47));

// divisor embedding along a tower
MumfordDivisor embed_divisor(const MumfordDivisor& D, FieldRef dst);

}  // namespace g2cm
