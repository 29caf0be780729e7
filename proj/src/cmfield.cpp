#include "g2cm/cmfield.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "g2cm/fields.hpp"
#include "g2cm/polynomial.hpp"

namespace g2cm {

std::string galois_type_name(GaloisType t) {
    switch (t) {
        case GaloisType::V4: return "V4";
        case GaloisType::C4: return "C4";
        case GaloisType::D4_or_NonGalois: return "D4_or_NonGalois";
        case GaloisType::NotIrreducible: return "NotIrreducible";
        case GaloisType::NotCM: return "NotCM";
    }
    return "?";
}

namespace {

Int pollard_rho(const Int& n, unsigned long c) {
    // Brent cycle detection; n odd composite
    Int x = 2, y = 2, d = 1, diff;
    auto step = [&](Int& v) { v = (v * v + c) % n; };
    unsigned long power = 1, lam = 0;
    step(y);
    while (d == 1) {
        if (power == lam) {
            x = y;
            power *= 2;
            lam = 0;
        }
        step(y);
        ++lam;
        diff = x > y ? Int(x - y) : Int(y - x);
        if (diff == 0) return 0;  // cycle without factor; retry with new c
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    return d == n ? Int(0) : d;
}

void factor_into(Int n, std::vector<std::pair<Int, unsigned>>& out) {
    if (n <= 1) return;
    if (is_probable_prime(n)) {
        for (auto& [p, e] : out)
            if (p == n) {
                ++e;
                return;
            }
        out.emplace_back(n, 1);
        return;
    }
    Int root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        factor_into(root, out);
        factor_into(root, out);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Int d = pollard_rho(n, c);
        if (d > 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
        if (c > 64) throw Error("factorization failed");
    }
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n_in) {
    std::vector<std::pair<Int, unsigned>> out;
    Int n = n_in < 0 ? Int(-n_in) : n_in;
    if (n <= 1) return out;
    for (u64 p = 2; p <= 100000 && n > 1; p = (p == 2 ? 3 : p + 2)) {
        if (mod_u64(n, p) != 0) continue;
        unsigned e = 0;
        while (mod_u64(n, p) == 0) {
            n /= static_cast<unsigned long>(p);
            ++e;
        }
        out.emplace_back(Int(static_cast<unsigned long>(p)), e);
        if (n == 1) return out;
        if (is_probable_prime(n)) break;
    }
    factor_into(n, out);
    return out;
}

std::vector<Int> divisors_signed(const Int& n) {
    // all divisors of |n|, both signs, from the prime factorization
    std::vector<Int> out = {Int(1)};
    for (const auto& [p, e] : factorize(n)) {
        size_t base = out.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    size_t base = out.size();
    out.reserve(2 * base);
    for (size_t j = 0; j < base; ++j) out.push_back(-out[j]);
    return out;
}

bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return true;
}

}  // namespace

bool is_irreducible_quartic(const QuarticPolynomial& P) {
    if (P.e == 0) return false;  // rational root 0
    for (const Int& r : divisors_signed(P.e)) {
        if (P.eval(r) == 0) return false;
    }
    // split into (X^2 + a X + b)(X^2 + c X + d): b d = e, a + c = B,
    // a c = C - b - d, a d + b c = D
    for (const Int& b : divisors_signed(P.e)) {
        Int d = P.e / b;
        Int s = P.b;             // a + c
        Int prod = P.c - b - d;  // a c
        Int disc = s * s - 4 * prod;
        Int root;
        if (!is_perfect_square(disc, root)) continue;
        for (int sign = 0; sign < 2; ++sign) {
            Int num = sign == 0 ? Int(s + root) : Int(s - root);
            if (mod_u64(num, 2) != 0) continue;
            Int a = num / 2;
            Int c = s - a;
            if (a * d + b * c == P.d) return false;
        }
    }
    return true;
}

std::array<Int, 4> resolvent_cubic(const QuarticPolynomial& P) {
    const Int &b = P.b, &c = P.c, &d = P.d, &e = P.e;
    return {-(b * b * e - 4 * c * e + d * d), b * d - 4 * e, -c, Int(1)};
}

unsigned count_real_roots_quartic(const QuarticPolynomial& P) {
    // Sturm chain over Z; the eliminations multiply by positive squares of
    // leading coefficients so the sign sequence is preserved
    using ZPoly = std::vector<Int>;  // c0 first
    auto trim = [](ZPoly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    };
    auto content_reduce = [&](ZPoly& a) {
        Int g = 0;
        for (const Int& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g > 1)
            for (Int& c : a) c /= g;
    };
    auto neg_srem = [&](ZPoly a, const ZPoly& b) {
        // remainder of lc(b)^{2k} * a by b, negated
        trim(a);
        Int lb = b.back();
        Int l2 = lb * lb;
        while (a.size() >= b.size() && !a.empty()) {
            for (Int& c : a) c *= l2;
            Int q = a.back() / lb;  // exact: a.back() is a multiple of lb after scaling
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
            trim(a);
        }
        for (Int& c : a) c = -c;
        content_reduce(a);
        return a;
    };
    std::vector<ZPoly> chain;
    ZPoly f0 = {P.e, P.d, P.c, P.b, Int(1)};
    ZPoly f1 = {P.d, 2 * P.c, 3 * P.b, Int(4)};
    trim(f0);
    trim(f1);
    chain.push_back(f0);
    if (!f1.empty()) chain.push_back(f1);
    while (chain.back().size() > 1) {
        ZPoly nxt = neg_srem(chain[chain.size() - 2], chain.back());
        if (nxt.empty()) break;  // repeated roots: callers pass squarefree input
        chain.push_back(std::move(nxt));
    }
    auto sign_changes = [&](int at_infinity) {
        int prev = 0;
        unsigned changes = 0;
        for (const ZPoly& f : chain) {
            Int lead = f.back();
            int s = sgn(lead);
            if (at_infinity < 0 && (f.size() - 1) % 2 == 1) s = -s;
            if (s != 0 && prev != 0 && s != prev) ++changes;
            if (s != 0) prev = s;
        }
        return changes;
    };
    return sign_changes(-1) - sign_changes(+1);
}

GaloisType classify_galois(const QuarticPolynomial& P) {
    if (!is_irreducible_quartic(P)) return GaloisType::NotIrreducible;
    if (count_real_roots_quartic(P) > 0) return GaloisType::NotCM;

    auto res = resolvent_cubic(P);
    unsigned rational_roots = 0;
    if (res[0] == 0) {
        ++rational_roots;
        // remaining quadratic y^2 + res[2] y + res[1]
        Int disc = res[2] * res[2] - 4 * res[1];
        Int root;
        if (is_perfect_square(disc, root)) {
            rational_roots += (root == 0) ? 1 : 2;
        }
    } else {
        std::vector<Int> seen;
        for (const Int& r : divisors_signed(res[0])) {
            Int val = ((r + res[2]) * r + res[1]) * r + res[0];
            if (val == 0) seen.push_back(r);
        }
        rational_roots = static_cast<unsigned>(seen.size());
    }
    if (rational_roots >= 3) return GaloisType::V4;

    // C4 vs D4/non-Galois: factorization degree patterns mod small primes.
    // Quartic CM fields are never A4/S4, so a 1+1+2 pattern certifies
    // D4_or_NonGalois; none across the sample labels C4 (probabilistic).
    Int disc = discriminant(P);
    unsigned sampled = 0;
    u64 r = 2;
    while (sampled < 50) {
        r = r + 1;
        while (!is_prime_u64(r)) ++r;
        if (mod_u64(disc, r) == 0) continue;
        ++sampled;
        FieldRef F = Field::prime_field(Int(static_cast<unsigned long>(r)));
        std::vector<u64> c = {mod_u64(P.e, r), mod_u64(P.d, r), mod_u64(P.c, r),
                              mod_u64(P.b, r), 1};
        Poly g = Poly::from_u64(F, c);
        // distinct-degree split: degree-d part = gcd(X^{r^d} - X, g)
        std::vector<int> degs;
        Poly x = Poly::x(F);
        Poly h = x;
        Poly rest = g;
        for (unsigned d = 1; d <= 4 && rest.deg() > 0; ++d) {
            h = poly_powmod(h, F->characteristic(), rest);
            Poly part = poly_gcd(h - poly_mod(x, rest), rest);
            if (part.deg() > 0) {
                for (int i = 0; i < part.deg() / static_cast<int>(d); ++i) degs.push_back(d);
                rest = poly_divexact(rest, part);
                h = poly_mod(h, rest);
            }
        }
        std::sort(degs.begin(), degs.end());
        // mixed factor degrees cannot happen in a Galois extension
        if (!degs.empty() && degs.front() != degs.back()) return GaloisType::D4_or_NonGalois;
    }
    return GaloisType::C4;
}

bool is_primitive_cm(const QuarticPolynomial& P) {
    GaloisType t = classify_galois(P);
    switch (t) {
        case GaloisType::C4:
        case GaloisType::D4_or_NonGalois: return true;
        case GaloisType::V4: return false;
        default: throw NotAQuarticCMField(galois_type_name(t));
    }
}

Int discriminant(const QuarticPolynomial& P) {
    // Sylvester matrix of P (degree 4) and P' (degree 3): 7x7
    std::array<Int, 5> f = {P.e, P.d, P.c, P.b, Int(1)};
    std::array<Int, 4> g = {P.d, 2 * P.c, 3 * P.b, Int(4)};
    Int m[7][7];
    for (auto& row : m)
        for (auto& x : row) x = 0;
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i <= 4; ++i) m[r][r + 4 - i] = f[i];
    for (int r = 0; r < 4; ++r)
        for (int i = 0; i <= 3; ++i) m[3 + r][r + 3 - i] = g[i];
    // determinant by recursive cofactor expansion
    std::vector<std::vector<Int>> mat(7, std::vector<Int>(7));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) mat[i][j] = m[i][j];
    std::function<Int(const std::vector<std::vector<Int>>&)> det =
        [&](const std::vector<std::vector<Int>>& a) -> Int {
        size_t n = a.size();
        if (n == 1) return a[0][0];
        if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
        Int acc = 0;
        for (size_t i = 0; i < n; ++i) {
            if (a[i][0] == 0) continue;
            std::vector<std::vector<Int>> minor;
            minor.reserve(n - 1);
            for (size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                minor.emplace_back(a[r].begin() + 1, a[r].end());
            }
            Int term = a[i][0] * det(minor);
            acc += (i % 2 == 0) ? term : -term;
        }
        return acc;
    };
    // disc = (-1)^{n(n-1)/2} Res(P, P') / lc(P) with n = 4
    return det(mat);
}

Ramification ell_ramification(const QuarticPolynomial& P, u64 ell) {
    return mod_u64(discriminant(P), ell) == 0 ? Ramification::Indeterminate
                                              : Ramification::Unramified;
}

}  // namespace g2cm
