#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace g2cm {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

// Arbitrary-precision integer. Orders, exponents and scalars routinely
// exceed machine words (p^kappa for kappa up to 64), so everything that
// counts group elements goes through this type.
using Int = mpz_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline u64 mod_u64(const Int& a, u64 m) {
    Int r = a % Int(static_cast<unsigned long>(m));
    if (r < 0) r += Int(static_cast<unsigned long>(m));
    return r.get_ui();
}

inline bool fits_u64(const Int& a) {
    return a >= 0 && mpz_sizeinbase(a.get_mpz_t(), 2) <= 64;
}

inline u64 to_u64(const Int& a) { return mpz_get_ui(a.get_mpz_t()); }

inline bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

inline size_t bit_length(const Int& a) {
    if (a == 0) return 0;
    return mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline bool bit_at(const Int& a, size_t i) {
    return mpz_tstbit(a.get_mpz_t(), i) != 0;
}

// Exact count of times ell divides n (n != 0).
inline unsigned valuation(Int n, u64 ell) {
    unsigned v = 0;
    Int q, r, l(static_cast<unsigned long>(ell));
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), l.get_mpz_t());
        if (r != 0) break;
        n = q;
        ++v;
    }
    return v;
}

inline std::string to_string(const Int& a) { return a.get_str(); }

}  // namespace g2cm
