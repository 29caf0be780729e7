#pragma once

#include <vector>

#include "g2cm/fields.hpp"

namespace g2cm {

// Dense polynomial over a single field. Coefficient 0 is the constant term;
// the zero polynomial has an empty coefficient vector and degree -1.
class Poly {
  public:
    Poly() : F_(nullptr) {}
    explicit Poly(FieldRef F) : F_(F) {}
    Poly(FieldRef F, std::vector<FieldElement> coeffs);

    static Poly zero(FieldRef F) { return Poly(F); }
    static Poly constant(FieldRef F, const FieldElement& a);
    static Poly x(FieldRef F);
    static Poly from_u64(FieldRef F, const std::vector<u64>& coeffs);

    FieldRef field() const { return F_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    const FieldElement& operator[](size_t i) const { return c_[i]; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement coeff(size_t i) const;  // 0 beyond degree
    const FieldElement& lc() const { return c_.back(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return F_ == o.F_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const FieldElement& a) const;
    Poly monic() const;
    Poly derivative() const;
    FieldElement eval(const FieldElement& x) const;
    std::string str() const;

  private:
    FieldRef F_;
    std::vector<FieldElement> c_;
    void trim();
};

// quotient and remainder; divisor must be nonzero
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
// exact division; throws if remainder is nonzero
Poly poly_divexact(const Poly& a, const Poly& b);
// monic gcd
Poly poly_gcd(Poly a, Poly b);
// g = s*a + t*b with g the monic gcd
struct XgcdResult {
    Poly g, s, t;
};
XgcdResult poly_xgcd(const Poly& a, const Poly& b);
// base^e mod m
Poly poly_powmod(const Poly& base, const Int& e, const Poly& m);

// Coefficient-wise embedding along a field tower.
Poly poly_embed(const Poly& a, FieldRef dst);

// One root of g over its own field; g must split into linear factors there
// (equal-degree splitting, deterministic under the supplied stream).
FieldElement find_root(const Poly& g, SeedStream rng);

// Square root of a modulo u, where F[x]/(u) is a field (u irreducible).
// Returns nullopt for non-squares.
std::optional<Poly> sqrt_mod_irreducible(const Poly& a, const Poly& u);

// Irreducible factors of a squarefree polynomial (distinct-degree plus
// equal-degree splitting; deterministic under the stream).
std::vector<Poly> factor_squarefree(const Poly& f, SeedStream rng);

}  // namespace g2cm
