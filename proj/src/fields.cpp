#include "g2cm/fields.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "g2cm/polynomial.hpp"

namespace g2cm {

namespace {

using u128 = unsigned __int128;

// word-level polynomial helpers over F_p (vectors of coefficients, c0 first)
using WPoly = std::vector<u64>;

void wp_trim(WPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

WPoly wp_mul(const WPoly& a, const WPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    WPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        u128 ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            u128 cur = r[i + j] + ai * b[j] % p;
            r[i + j] = static_cast<u64>(cur % p);
        }
    }
    wp_trim(r);
    return r;
}

u64 w_inv(u64 a, u64 p) {
    // extended Euclid on words
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw DivisionByZero();
    if (t < 0) t += static_cast<long long>(p);
    return static_cast<u64>(t);
}

// remainder of a modulo b (b nonzero), in place on a copy
WPoly wp_rem(WPoly a, const WPoly& b, u64 p) {
    wp_trim(a);
    u64 binv = w_inv(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        u64 q = static_cast<u64>(u128(a.back()) * binv % p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            u128 sub = u128(q) * b[i] % p;
            u64& t = a[shift + i];
            t = (t + p - static_cast<u64>(sub)) % p;
        }
        wp_trim(a);
    }
    return a;
}

WPoly wp_gcd(WPoly a, WPoly b, u64 p) {
    wp_trim(a);
    wp_trim(b);
    while (!b.empty()) {
        WPoly r = wp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        u64 inv = w_inv(a.back(), p);
        for (u64& c : a) c = static_cast<u64>(u128(c) * inv % p);
    }
    return a;
}

// s with s*a = gcd(a, m) mod m; used for inverses (gcd must be constant)
WPoly wp_invert(const WPoly& a, const WPoly& m, u64 p) {
    WPoly r0 = m, r1 = a;
    wp_trim(r1);
    WPoly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        WPoly r2 = r0;
        WPoly q;
        u64 linv = w_inv(r1.back(), p);
        wp_trim(r2);
        if (r2.size() >= r1.size()) q.assign(r2.size() - r1.size() + 1, 0);
        while (r2.size() >= r1.size() && !r2.empty()) {
            u64 qc = static_cast<u64>(u128(r2.back()) * linv % p);
            size_t shift = r2.size() - r1.size();
            q[shift] = qc;
            for (size_t i = 0; i < r1.size(); ++i) {
                u128 sub = u128(qc) * r1[i] % p;
                u64& t = r2[shift + i];
                t = (t + p - static_cast<u64>(sub)) % p;
            }
            wp_trim(r2);
        }
        wp_trim(q);
        // s2 = s0 - q*s1
        WPoly qs = wp_mul(q, s1, p);
        WPoly s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
        wp_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw DivisionByZero("element not invertible");
    u64 ginv = w_inv(r0[0], p);
    for (u64& c : s0) c = static_cast<u64>(u128(c) * ginv % p);
    WPoly out = wp_rem(std::move(s0), m, p);
    return out;
}

WPoly wp_powmod(WPoly base, const Int& e, const WPoly& m, u64 p) {
    WPoly r = {1};
    base = wp_rem(std::move(base), m, p);
    size_t bits = bit_length(e);
    for (size_t i = bits; i-- > 0;) {
        r = wp_rem(wp_mul(r, r, p), m, p);
        if (bit_at(e, i)) r = wp_rem(wp_mul(r, base, p), m, p);
    }
    return r;
}

// irreducibility test: gcd(X^{p^d} - X, f) = 1 for all proper divisors d of n,
// and X^{p^n} = X mod f
bool wp_irreducible(const WPoly& f, const Int& p_big, u64 p) {
    size_t n = f.size() - 1;
    // X^{p^d} mod f computed incrementally
    WPoly h = {0, 1};
    h = wp_rem(std::move(h), f, p);
    std::vector<WPoly> frob_powers(n + 1);
    frob_powers[0] = h;
    for (size_t d = 1; d <= n; ++d) {
        h = wp_powmod(std::move(h), p_big, f, p);
        frob_powers[d] = h;
    }
    // X^{p^n} == X?
    WPoly x = wp_rem({0, 1}, f, p);
    if (frob_powers[n] != x) return false;
    for (size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        WPoly diff = frob_powers[d];
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        wp_trim(diff);
        WPoly g = wp_gcd(diff, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

struct FieldKey {
    Int p;
    unsigned n;
    bool operator<(const FieldKey& o) const {
        if (p != o.p) return p < o.p;
        return n < o.n;
    }
};

}  // namespace

struct FieldRegistry {
    std::mutex mu;
    std::map<FieldKey, std::unique_ptr<Field>> fields;

    static FieldRegistry& instance() {
        static FieldRegistry reg;
        return reg;
    }

    FieldRef get(const Int& p, unsigned n, unsigned cap) {
        if (p == 2) throw EvenCharacteristic();
        if (p < 3 || !is_probable_prime(p)) throw CompositeModulus("p fails primality check");
        if (n < 1 || n > cap) throw DegreeCapExceeded();
        // Coefficients are stored in machine words; nothing at the scales
        // this artifact can enumerate needs a wider characteristic.
        if (mpz_sizeinbase(p.get_mpz_t(), 2) > 62) throw CharacteristicTooLarge();

        std::lock_guard<std::mutex> lock(mu);
        FieldKey key{p, n};
        auto it = fields.find(key);
        if (it != fields.end()) return it->second.get();

        auto f = std::unique_ptr<Field>(new Field());
        f->p_big_ = p;
        f->p_ = to_u64(p);
        f->n_ = n;
        f->order_ = int_pow(p, n);
        f->unit_order_ = f->order_ - 1;
        if (n > 1) {
            // ordered search: counter digits (base p, constant term first)
            u64 pw = f->p_;
            WPoly cand(n + 1, 0);
            cand[n] = 1;
            bool found = false;
            Int counter = 0;
            Int limit = int_pow(p, n);
            for (; counter < limit; ++counter) {
                Int t = counter;
                for (unsigned i = 0; i < n; ++i) {
                    cand[i] = mod_u64(t, pw);
                    t /= static_cast<unsigned long>(pw);
                }
                if (wp_irreducible(cand, p, pw)) {
                    found = true;
                    break;
                }
            }
            if (!found) throw Error("no irreducible modulus found");  // unreachable
            f->modulus_.assign(cand.begin(), cand.end() - 1);
        }
        FieldRef out = f.get();
        fields.emplace(key, std::move(f));
        return out;
    }
};

FieldRef Field::prime_field(const Int& p) { return FieldRegistry::instance().get(p, 1, 1); }

FieldRef Field::extension(const Int& p, unsigned n, unsigned degree_cap) {
    return FieldRegistry::instance().get(p, n, degree_cap);
}

FieldRef build_extension(const Int& p, unsigned n, unsigned degree_cap) {
    return Field::extension(p, n, degree_cap);
}

u64 Field::add_w(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
}
u64 Field::sub_w(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
u64 Field::mul_w(u64 a, u64 b) const { return static_cast<u64>(u128(a) * b % p_); }
u64 Field::inv_w(u64 a) const {
    if (a == 0) throw DivisionByZero();
    return w_inv(a, p_);
}

FieldElement Field::zero() const { return FieldElement(this, std::vector<u64>(n_, 0)); }

FieldElement Field::one() const { return from_u64(1); }

FieldElement Field::from_u64(u64 v) const {
    std::vector<u64> c(n_, 0);
    c[0] = v % p_;
    return FieldElement(this, std::move(c));
}

FieldElement Field::from_int(const Int& v) const {
    std::vector<u64> c(n_, 0);
    c[0] = mod_u64(v, p_);
    return FieldElement(this, std::move(c));
}

FieldElement Field::from_coeffs(std::vector<u64> c) const {
    if (c.size() > n_) throw Error("coefficient vector too long");
    c.resize(n_, 0);
    for (u64& x : c) x %= p_;
    return FieldElement(this, std::move(c));
}

FieldElement Field::from_counter(const Int& counter) const {
    std::vector<u64> c(n_, 0);
    Int t = counter;
    for (unsigned i = 0; i < n_; ++i) {
        c[i] = mod_u64(t, p_);
        t /= static_cast<unsigned long>(p_);
    }
    return FieldElement(this, std::move(c));
}

FieldElement Field::sample(SeedStream& rng) const {
    std::vector<u64> c(n_);
    for (unsigned i = 0; i < n_; ++i) c[i] = rng.below(p_);
    return FieldElement(this, std::move(c));
}

FieldElement::FieldElement(FieldRef F, std::vector<u64> coeffs) : F_(F), c_(std::move(coeffs)) {
    if (c_.size() != F->degree()) throw Error("bad coefficient vector length");
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 x) { return x == 0; });
}

bool FieldElement::operator==(const FieldElement& o) const { return F_ == o.F_ && c_ == o.c_; }

bool FieldElement::lex_less(const FieldElement& o) const { return c_ < o.c_; }

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (F_ != o.F_) throw FieldMismatch();
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = F_->add_w(c_[i], o.c_[i]);
    return FieldElement(F_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    if (F_ != o.F_) throw FieldMismatch();
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = F_->sub_w(c_[i], o.c_[i]);
    return FieldElement(F_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] == 0 ? 0 : F_->p() - c_[i];
    return FieldElement(F_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (F_ != o.F_) throw FieldMismatch();
    u64 p = F_->p();
    unsigned n = F_->degree();
    if (n == 1) {
        return FieldElement(F_, {static_cast<u64>(u128(c_[0]) * o.c_[0] % p)});
    }
    // schoolbook product with 128-bit accumulation, then reduce by the
    // monic modulus
    std::vector<u128> acc(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j < n; ++j) acc[i + j] += u128(c_[i]) * o.c_[j] % p;
    }
    const std::vector<u64>& m = F_->modulus();
    for (unsigned k = 2 * n - 2; k >= n; --k) {
        u64 top = static_cast<u64>(acc[k] % p);
        if (top != 0) {
            // X^k = X^{k-n} * (-m)
            for (unsigned j = 0; j < n; ++j) {
                if (m[j] == 0) continue;
                u128 sub = u128(top) * m[j] % p;
                acc[k - n + j] += p - static_cast<u64>(sub);
            }
        }
        if (k == n) break;
    }
    std::vector<u64> r(n);
    for (unsigned i = 0; i < n; ++i) r[i] = static_cast<u64>(acc[i] % p);
    return FieldElement(F_, std::move(r));
}

std::string FieldElement::str() const {
    std::ostringstream os;
    if (F_->degree() == 1) {
        os << c_[0];
        return os.str();
    }
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

FieldElement field_inv(const FieldElement& a) {
    FieldRef F = a.field();
    if (a.is_zero()) throw DivisionByZero();
    if (F->degree() == 1) return FieldElement(F, {F->inv_w(a.coeffs()[0])});
    WPoly m(F->modulus());
    m.push_back(1);
    WPoly e = a.coeffs();
    wp_trim(e);
    WPoly s = wp_invert(e, m, F->p());
    s.resize(F->degree(), 0);
    return FieldElement(F, std::move(s));
}

FieldElement field_pow(const FieldElement& a, const Int& e) {
    FieldRef F = a.field();
    if (e < 0) return field_pow(field_inv(a), -e);
    FieldElement r = F->one();
    size_t bits = bit_length(e);
    for (size_t i = bits; i-- > 0;) {
        r = r * r;
        if (bit_at(e, i)) r = r * a;
    }
    return r;
}

bool is_square(const FieldElement& a) {
    if (a.is_zero()) return true;
    FieldRef F = a.field();
    Int h = F->unit_group_order() / 2;
    return field_pow(a, h) == F->one();
}

std::optional<FieldElement> field_sqrt(const FieldElement& a) {
    FieldRef F = a.field();
    if (a.is_zero()) return F->zero();
    Int qm1 = F->unit_group_order();
    Int half = qm1 / 2;
    if (field_pow(a, half) != F->one()) return std::nullopt;

    FieldElement r = F->zero();
    if (mod_u64(qm1, 4) == 2) {  // q = 3 mod 4
        r = field_pow(a, (qm1 + 2) / 4);
    } else {
        // Tonelli-Shanks; non-residue found by deterministic counter scan
        Int t = qm1;
        unsigned s = 0;
        while (mod_u64(t, 2) == 0) {
            t /= 2;
            ++s;
        }
        // skip the prime-subfield constants in proper extensions; for even
        // degree they are all squares
        FieldElement z = F->zero();
        for (Int counter = F->degree() > 1 ? F->characteristic() : Int(1);; ++counter) {
            z = F->from_counter(counter);
            if (!z.is_zero() && field_pow(z, half) != F->one()) break;
        }
        FieldElement c = field_pow(z, t);
        FieldElement x = field_pow(a, t);
        r = field_pow(a, (t + 1) / 2);
        unsigned m = s;
        while (!(x == F->one())) {
            unsigned i = 0;
            FieldElement probe = x;
            while (!(probe == F->one())) {
                probe = probe * probe;
                ++i;
                if (i == m) throw Error("sqrt internal failure");
            }
            FieldElement b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b;
            m = i;
            c = b * b;
            x = x * c;
            r = r * b;
        }
    }
    FieldElement neg = -r;
    if (neg.lex_less(r)) r = neg;
    return r;
}

unsigned multiplicative_order(const Int& q, u64 ell) {
    u64 a = mod_u64(q, ell);
    if (a == 0) throw NotCoprime();
    u64 acc = a;
    for (unsigned k = 1; k < ell; ++k) {
        if (acc == 1) return k;
        acc = static_cast<u64>(u128(acc) * a % ell);
    }
    throw NotCoprime("no multiplicative order found; ell not prime?");
}

FieldElement frobenius_p(const FieldElement& a) {
    return field_pow(a, a.field()->characteristic());
}

namespace {

struct EmbedKey {
    FieldRef src;
    FieldRef dst;
    bool operator<(const EmbedKey& o) const {
        if (src != o.src) return src < o.src;
        return dst < o.dst;
    }
};

struct EmbedCache {
    std::mutex mu;
    std::map<EmbedKey, std::vector<FieldElement>> powers;  // rho^0 .. rho^{srcdeg-1}

    static EmbedCache& instance() {
        static EmbedCache c;
        return c;
    }
};

}  // namespace

FieldElement embed(const FieldElement& a, FieldRef src, FieldRef dst) {
    if (a.field() != src) throw FieldMismatch();
    if (src == dst) return a;
    if (src->characteristic() != dst->characteristic()) throw IncompatibleTower();
    if (dst->degree() % src->degree() != 0) throw IncompatibleTower();
    if (src->degree() == 1) return dst->from_u64(a.coeffs()[0]);

    EmbedCache& cache = EmbedCache::instance();
    std::vector<FieldElement> powers;
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.powers.find({src, dst});
        if (it != cache.powers.end()) powers = it->second;
    }
    if (powers.empty()) {
        // root of src's modulus in dst; fixed internal seed keeps the choice
        // reproducible across runs
        std::vector<u64> m = src->modulus();
        m.push_back(1);
        Poly modulus = Poly::from_u64(dst, m);
        u64 seed = 0x9e3779b97f4a7c15ULL ^ (u64(src->degree()) << 32) ^
                   (u64(dst->degree()) << 16) ^ src->p();
        FieldElement rho = find_root(modulus, SeedStream(seed));
        if (!modulus.eval(rho).is_zero()) throw Error("embedding root is wrong");
        powers.resize(src->degree());
        powers[0] = dst->one();
        for (unsigned i = 1; i < src->degree(); ++i) powers[i] = powers[i - 1] * rho;
        std::lock_guard<std::mutex> lock(cache.mu);
        cache.powers.emplace(EmbedKey{src, dst}, powers);
    }
    // out = sum_i a_i * rho^i, accumulated coefficient-wise (a_i are
    // prime-field words, so no full extension multiplications are needed)
    u64 p = dst->p();
    std::vector<u64> out(dst->degree(), 0);
    for (unsigned i = 0; i < src->degree(); ++i) {
        u64 ai = a.coeffs()[i];
        if (ai == 0) continue;
        const std::vector<u64>& pw = powers[i].coeffs();
        for (unsigned j = 0; j < dst->degree(); ++j) {
            u128 cur = u128(ai) * pw[j] % p + out[j];
            out[j] = static_cast<u64>(cur % p);
        }
    }
    return FieldElement(dst, std::move(out));
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto powmod = [&](u64 b, u64 e) {
        u64 r = 1;
        b %= n;
        while (e > 0) {
            if (e & 1) r = static_cast<u64>(u128(r) * b % n);
            b = static_cast<u64>(u128(b) * b % n);
            e >>= 1;
        }
        return r;
    };
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = static_cast<u64>(u128(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace g2cm
