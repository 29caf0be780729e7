#pragma once

#include <array>
#include <string>

#include "g2cm/bigint.hpp"
#include "g2cm/errors.hpp"

namespace g2cm {

// Monic integer quartic X^4 + b X^3 + c X^2 + d X + e.
struct QuarticPolynomial {
    Int b, c, d, e;

    Int eval(const Int& x) const { return (((x + b) * x + c) * x + d) * x + e; }
};

enum class GaloisType { V4, C4, D4_or_NonGalois, NotIrreducible, NotCM };

std::string galois_type_name(GaloisType t);

// no rational root and no split into two monic integer quadratics
bool is_irreducible_quartic(const QuarticPolynomial& P);

// y^3 - c y^2 + (bd - 4e) y - (b^2 e - 4ce + d^2); coefficients c0..c3
std::array<Int, 4> resolvent_cubic(const QuarticPolynomial& P);

// V4 iff the resolvent cubic has three rational roots. The C4 / D4
// sub-distinction comes from factorization patterns mod the first 50 good
// primes (a 1+1+2 pattern certifies D4_or_NonGalois; seeing none labels C4).
GaloisType classify_galois(const QuarticPolynomial& P);

// true iff the field is non-Galois or cyclic; throws NotAQuarticCMField
// for NotIrreducible / NotCM inputs
bool is_primitive_cm(const QuarticPolynomial& P);

// disc(P) = Res(P, P') for monic quartics, via the Sylvester determinant
Int discriminant(const QuarticPolynomial& P);

enum class Ramification { Unramified, Indeterminate };

// Unramified when ell does not divide disc(P); otherwise the maximal order
// is not computed and the caller must treat the instance as unsettled.
Ramification ell_ramification(const QuarticPolynomial& P, u64 ell);

// exact count of real roots (Sturm), used for the NotCM screen
unsigned count_real_roots_quartic(const QuarticPolynomial& P);

}  // namespace g2cm
