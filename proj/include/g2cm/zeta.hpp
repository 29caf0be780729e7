#pragma once

#include <array>

#include "g2cm/curve.hpp"
#include "g2cm/modl.hpp"

namespace g2cm {

// P(X) = X^4 - a1 X^3 + a2 X^2 - p a1 X + p^2; the functional equation is
// built into the shape, so roots come in pairs (alpha, p/alpha).
struct WeilPolynomial {
    Int a1, a2, p;

    // c0..c4, monic
    std::array<Int, 5> coeffs() const {
        return {p * p, -p * a1, a2, -a1, Int(1)};
    }
    Int eval(const Int& x) const {
        Int acc = 0;
        auto c = coeffs();
        for (int i = 4; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    }
    Int order() const { return eval(1); }  // |J(F_p)|
    std::string str() const;
};

// #C(F_{p^m}) by the quadratic-character loop; m must be 1 or 2 and p^m
// must stay within the enumeration budget.
Int count_points(const GenusTwoCurve& C, unsigned m, const Int& budget = Int(1000000));

// From counts over F_p and F_{p^2}; validates integrality and Weil bounds
// (including |root| = sqrt(p) numerically to 1e-9).
WeilPolynomial weil_polynomial(const GenusTwoCurve& C, const Int& budget = Int(1000000));

// |J(F_{p^m})| = det(I - Cp^m) with Cp the integer companion matrix of P.
Int jacobian_order(const WeilPolynomial& P, unsigned m);

// characteristic polynomial of the m-power Frobenius reduced mod ell;
// coefficients c0..c4 over F_ell, monic
std::array<u64, 5> charpoly_mod(const WeilPolynomial& P, u64 ell, unsigned m);

// 4x4 integer matrices, for exact companion powers
using Mat4 = std::array<std::array<Int, 4>, 4>;
Mat4 companion_int(const WeilPolynomial& P);
Mat4 mat4_mul(const Mat4& a, const Mat4& b);
Mat4 mat4_pow(Mat4 base, unsigned e);
Int mat4_det(const Mat4& m);
// integer charpoly of a 4x4 integer matrix (coefficients c0..c4, monic)
std::array<Int, 5> mat4_charpoly(const Mat4& m);

}  // namespace g2cm
