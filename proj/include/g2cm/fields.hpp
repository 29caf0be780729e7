#pragma once

#include <optional>
#include <vector>

#include "g2cm/bigint.hpp"
#include "g2cm/errors.hpp"
#include "g2cm/rng.hpp"

namespace g2cm {

class Field;

// Interned, immutable descriptors. Pointers stay valid for the lifetime
// of the process, so elements can hold a plain pointer.
using FieldRef = const Field*;

class FieldElement {
  public:
    FieldElement() : F_(nullptr) {}
    FieldElement(FieldRef F, std::vector<u64> coeffs);

    FieldRef field() const { return F_; }
    const std::vector<u64>& coeffs() const { return c_; }
    bool is_zero() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // canonical-form comparison: coefficient vectors, c0 first
    bool lex_less(const FieldElement& o) const;

    std::string str() const;

  private:
    FieldRef F_;
    std::vector<u64> c_;  // length n, entries in [0, p)
};

// Explicit tower F_p subset F_{p^n} with a polynomial-basis modulus over F_p.
class Field {
  public:
    // n = 1; modulus kept empty as a marker.
    static FieldRef prime_field(const Int& p);
    // Deterministically chosen irreducible modulus (ordered counter search,
    // constant coefficient as the lowest digit; first irreducible wins).
    static FieldRef extension(const Int& p, unsigned n, unsigned degree_cap = kDefaultDegreeCap);

    static constexpr unsigned kDefaultDegreeCap = 64;

    const Int& characteristic() const { return p_big_; }
    u64 p() const { return p_; }
    unsigned degree() const { return n_; }
    const std::vector<u64>& modulus() const { return modulus_; }
    const Int& order() const { return order_; }
    const Int& unit_group_order() const { return unit_order_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_u64(u64 v) const;
    FieldElement from_int(const Int& v) const;
    FieldElement from_coeffs(std::vector<u64> c) const;
    // Element whose coefficient digits are the base-p digits of the counter.
    FieldElement from_counter(const Int& counter) const;
    FieldElement sample(SeedStream& rng) const;

  private:
    Field() = default;
    friend struct FieldRegistry;

    Int p_big_;
    u64 p_ = 0;
    unsigned n_ = 1;
    std::vector<u64> modulus_;  // c0..c_{n-1} of monic modulus; empty when n == 1
    Int order_;
    Int unit_order_;

  public:
    // internal helpers used by the arithmetic layer
    u64 add_w(u64 a, u64 b) const;
    u64 sub_w(u64 a, u64 b) const;
    u64 mul_w(u64 a, u64 b) const;
    u64 inv_w(u64 a) const;
};

// free-function surface ----------------------------------------------------

FieldRef build_extension(const Int& p, unsigned n, unsigned degree_cap = Field::kDefaultDegreeCap);

FieldElement field_inv(const FieldElement& a);
FieldElement field_pow(const FieldElement& a, const Int& e);
// Canonical root (lexicographically smaller coefficient vector); nullopt
// when a is a non-square.
std::optional<FieldElement> field_sqrt(const FieldElement& a);
// Least k >= 1 with q^k = 1 mod ell.
unsigned multiplicative_order(const Int& q, u64 ell);
// Ring-homomorphic image along the tower; the chosen root of src's modulus
// in dst is computed once per (src, dst) pair and cached.
FieldElement embed(const FieldElement& a, FieldRef src, FieldRef dst);

// a -> a^p (base-field Frobenius relative to F_p)
FieldElement frobenius_p(const FieldElement& a);

// true iff a is a square (0 counts as a square)
bool is_square(const FieldElement& a);

// 64-bit deterministic Miller-Rabin
bool is_prime_u64(u64 n);

}  // namespace g2cm
