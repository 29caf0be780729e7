#include "g2cm/polynomial.hpp"

#include <sstream>

namespace g2cm {

Poly::Poly(FieldRef F, std::vector<FieldElement> coeffs) : F_(F), c_(std::move(coeffs)) {
    for (const FieldElement& e : c_) {
        if (e.field() != F_) throw FieldMismatch();
    }
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(FieldRef F, const FieldElement& a) { return Poly(F, {a}); }

Poly Poly::x(FieldRef F) { return Poly(F, {F->zero(), F->one()}); }

Poly Poly::from_u64(FieldRef F, const std::vector<u64>& coeffs) {
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (u64 v : coeffs) c.push_back(F->from_u64(v));
    return Poly(F, std::move(c));
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0] == F_->one(); }

FieldElement Poly::coeff(size_t i) const { return i < c_.size() ? c_[i] : F_->zero(); }

Poly Poly::operator+(const Poly& o) const {
    if (F_ != o.F_) throw FieldMismatch();
    std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), F_->zero());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return Poly(F_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<FieldElement> r;
    r.reserve(c_.size());
    for (const FieldElement& e : c_) r.push_back(-e);
    return Poly(F_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (F_ != o.F_) throw FieldMismatch();
    if (is_zero() || o.is_zero()) return Poly(F_);
    std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, F_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
    }
    return Poly(F_, std::move(r));
}

Poly Poly::scaled(const FieldElement& a) const {
    std::vector<FieldElement> r;
    r.reserve(c_.size());
    for (const FieldElement& e : c_) r.push_back(e * a);
    return Poly(F_, std::move(r));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    if (lc() == F_->one()) return *this;
    return scaled(field_inv(lc()));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(F_);
    std::vector<FieldElement> r;
    r.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * F_->from_u64(i % F_->p()));
    return Poly(F_, std::move(r));
}

FieldElement Poly::eval(const FieldElement& x) const {
    FieldElement acc = F_->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].str();
        if (i >= 1) os << "*x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    FieldRef F = a.field();
    if (F != b.field()) throw FieldMismatch();
    if (a.deg() < b.deg()) return {Poly(F), a};
    FieldElement binv = field_inv(b.lc());
    std::vector<FieldElement> rem(a.coeffs());
    std::vector<FieldElement> quot(a.deg() - b.deg() + 1, F->zero());
    for (int k = a.deg(); k >= b.deg(); --k) {
        FieldElement q = rem[k] * binv;
        if (q.is_zero()) continue;
        quot[k - b.deg()] = q;
        for (int j = 0; j <= b.deg(); ++j) {
            rem[k - b.deg() + j] = rem[k - b.deg() + j] - q * b[j];
        }
    }
    return {Poly(F, std::move(quot)), Poly(F, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_divexact(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw Error("poly_divexact: division not exact");
    return q;
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

XgcdResult poly_xgcd(const Poly& a, const Poly& b) {
    FieldRef F = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F, F->one()), s1 = Poly(F);
    Poly t0 = Poly(F), t1 = Poly::constant(F, F->one());
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero() && !(r0.lc() == F->one())) {
        FieldElement inv = field_inv(r0.lc());
        r0 = r0.scaled(inv);
        s0 = s0.scaled(inv);
        t0 = t0.scaled(inv);
    }
    return {r0, s0, t0};
}

Poly poly_powmod(const Poly& base, const Int& e, const Poly& m) {
    FieldRef F = base.field();
    Poly r = Poly::constant(F, F->one());
    Poly b = poly_mod(base, m);
    size_t bits = bit_length(e);
    for (size_t i = bits; i-- > 0;) {
        r = poly_mod(r * r, m);
        if (bit_at(e, i)) r = poly_mod(r * b, m);
    }
    return r;
}

Poly poly_embed(const Poly& a, FieldRef dst) {
    FieldRef src = a.field();
    if (src == dst) return a;
    std::vector<FieldElement> c;
    c.reserve(a.coeffs().size());
    for (const FieldElement& e : a.coeffs()) c.push_back(embed(e, src, dst));
    return Poly(dst, std::move(c));
}

FieldElement find_root(const Poly& g_in, SeedStream rng) {
    FieldRef F = g_in.field();
    Poly g = g_in.monic();
    Int half = F->unit_group_order() / 2;
    while (g.deg() > 1) {
        // split with gcd(g, (x+r)^{(q-1)/2} - 1)
        FieldElement r = F->sample(rng);
        Poly shifted(F, {r, F->one()});
        Poly h = poly_powmod(shifted, half, g) - Poly::constant(F, F->one());
        Poly d = poly_gcd(h, g);
        if (d.deg() <= 0 || d.deg() == g.deg()) continue;
        Poly other = poly_divexact(g, d);
        g = (d.deg() <= other.deg()) ? d : other;
    }
    if (g.deg() != 1) throw Error("find_root: polynomial has no root in field");
    return -g[0];
}

std::optional<Poly> sqrt_mod_irreducible(const Poly& a_in, const Poly& u) {
    FieldRef F = u.field();
    Poly a = poly_mod(a_in, u);
    if (a.is_zero()) return Poly(F);
    Poly one = Poly::constant(F, F->one());
    // residue field has q^deg(u) elements
    Int q = F->order();
    Int ord = 1;
    for (int i = 0; i < u.deg(); ++i) ord *= q;
    Int qm1 = ord - 1;
    Int half = qm1 / 2;
    if (!(poly_powmod(a, half, u) == one)) return std::nullopt;
    if (mod_u64(qm1, 4) == 2) {
        return poly_powmod(a, (qm1 + 2) / 4, u);
    }
    Int t = qm1;
    unsigned s = 0;
    while (mod_u64(t, 2) == 0) {
        t /= 2;
        ++s;
    }
    // deterministic non-residue scan over counter-ordered ring elements;
    // starts past the base-field constants, which are all squares here
    Poly z(F);
    for (Int counter = F->order();; ++counter) {
        Int c = counter;
        std::vector<FieldElement> coeffs;
        for (int i = 0; i < u.deg(); ++i) {
            coeffs.push_back(F->from_counter(c % F->order()));
            c /= F->order();
        }
        z = Poly(F, std::move(coeffs));
        if (z.is_zero()) continue;
        if (!(poly_powmod(z, half, u) == one)) break;
    }
    Poly c = poly_powmod(z, t, u);
    Poly x = poly_powmod(a, t, u);
    Poly r = poly_powmod(a, (t + 1) / 2, u);
    unsigned m = s;
    while (!(x == one)) {
        unsigned i = 0;
        Poly probe = x;
        while (!(probe == one)) {
            probe = poly_mod(probe * probe, u);
            ++i;
            if (i == m) throw Error("sqrt_mod_irreducible internal failure");
        }
        Poly b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = poly_mod(b * b, u);
        m = i;
        c = poly_mod(b * b, u);
        x = poly_mod(x * c, u);
        r = poly_mod(r * b, u);
    }
    return r;
}

// irreducible factors of a squarefree polynomial over F_ell
std::vector<Poly> factor_squarefree(const Poly& f, SeedStream rng) {
    FieldRef F = f.field();
    std::vector<Poly> out;
    std::vector<Poly> stack = {f.monic()};
    Poly x = Poly::x(F);
    while (!stack.empty()) {
        Poly g = stack.back();
        stack.pop_back();
        if (g.deg() <= 0) continue;
        if (g.deg() == 1) {
            out.push_back(g);
            continue;
        }
        // distinct-degree split first
        Poly h = x;
        bool split = false;
        for (int d = 1; 2 * d <= g.deg(); ++d) {
            h = poly_powmod(h, F->characteristic(), g);
            Poly part = poly_gcd(h - poly_mod(x, g), g);
            if (part.deg() > 0 && part.deg() < g.deg()) {
                stack.push_back(part);
                stack.push_back(poly_divexact(g, part));
                split = true;
                break;
            }
            if (part.deg() == g.deg()) {
                // g is a product of degree-d irreducibles; equal-degree split
                if (part.deg() == d) {
                    out.push_back(g);
                    split = true;
                    break;
                }
                Int half = (int_pow(F->characteristic(), d) - 1) / 2;
                while (true) {
                    std::vector<FieldElement> rc;
                    for (int i = 0; i < g.deg(); ++i) rc.push_back(F->sample(rng));
                    Poly r(F, std::move(rc));
                    if (r.deg() < 1) continue;
                    Poly t = poly_powmod(r, half, g) - Poly::constant(F, F->one());
                    Poly d2 = poly_gcd(t, g);
                    if (d2.deg() > 0 && d2.deg() < g.deg()) {
                        stack.push_back(d2);
                        stack.push_back(poly_divexact(g, d2));
                        break;
                    }
                }
                split = true;
                break;
            }
        }
        if (!split) out.push_back(g);  // irreducible (no factor of degree <= deg/2)
    }
    return out;
}


}  // namespace g2cm
