#include "g2cm/zeta.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace g2cm {

std::string WeilPolynomial::str() const {
    std::ostringstream os;
    os << "X^4";
    auto term = [&](const Int& c, const char* mon) {
        if (c == 0) return;
        if (c > 0)
            os << " + " << c.get_str();
        else
            os << " - " << Int(-c).get_str();
        os << mon;
    };
    term(-a1, "*X^3");
    term(a2, "*X^2");
    term(-p * a1, "*X");
    term(p * p, "");
    return os.str();
}

Int count_points(const GenusTwoCurve& C, unsigned m, const Int& budget) {
    if (m < 1 || m > 2) throw Error("count_points supports m = 1 or 2");
    Int q = int_pow(C.base->characteristic(), m);
    if (q > budget) throw EnumerationBoundExceeded();
    FieldRef F = (m == 1) ? C.base
                          : Field::extension(C.base->characteristic(), 2);
    Poly fF = C.f_over(F);
    Int half = F->unit_group_order() / 2;
    u64 qw = to_u64(q);
    Int affine = 0;
    for (u64 i = 0; i < qw; ++i) {
        FieldElement x = F->from_counter(Int(static_cast<unsigned long>(i)));
        FieldElement val = fF.eval(x);
        if (val.is_zero()) {
            affine += 1;
            continue;
        }
        // 1 + chi(val) solutions in y
        if (field_pow(val, half) == F->one()) affine += 2;
    }
    return affine + 1;  // single point at infinity
}

namespace {

// all four complex roots must sit on |z| = sqrt(p); Durand-Kerner
bool roots_on_weil_circle(const WeilPolynomial& P) {
    using C = std::complex<double>;
    double b = -P.a1.get_d();
    double c = P.a2.get_d();
    double d = Int(-P.p * P.a1).get_d();
    double e = Int(P.p * P.p).get_d();
    auto eval = [&](C z) { return (((z + b) * z + c) * z + d) * z + e; };
    std::array<C, 4> r = {C(0.4, 0.9), C(-0.91, 0.42), C(0.31, -0.88), C(-0.5, -0.87)};
    double scale = std::sqrt(P.p.get_d());
    for (auto& z : r) z *= scale;
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (int i = 0; i < 4; ++i) {
            C denom(1, 0);
            for (int j = 0; j < 4; ++j)
                if (j != i) denom *= (r[i] - r[j]);
            C step = eval(r[i]) / denom;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-13 * std::max(1.0, scale)) break;
    }
    for (const auto& z : r) {
        if (std::abs(std::abs(z) - scale) > 1e-9 * std::max(1.0, scale)) return false;
    }
    return true;
}

}  // namespace

WeilPolynomial weil_polynomial(const GenusTwoCurve& C, const Int& budget) {
    const Int& p = C.base->characteristic();
    Int n1 = count_points(C, 1, budget);
    Int n2 = count_points(C, 2, budget);
    Int a1 = p + 1 - n1;
    Int t2 = p * p + 1 - n2;
    Int num = a1 * a1 - t2;
    if (mod_u64(num, 2) != 0) throw InconsistentCounts("a2 is not an integer");
    Int a2 = num / 2;
    WeilPolynomial P{a1, a2, p};
    if (a1 * a1 > 16 * p) throw InconsistentCounts("|a1| exceeds 4 sqrt(p)");
    if (a2 > 6 * p || a2 < -6 * p) throw InconsistentCounts("|a2| exceeds 6p");
    if (!roots_on_weil_circle(P)) throw InconsistentCounts("roots not on the Weil circle");
    return P;
}

Mat4 companion_int(const WeilPolynomial& P) {
    Mat4 m;
    for (auto& row : m)
        for (auto& x : row) x = 0;
    auto c = P.coeffs();
    for (int i = 1; i < 4; ++i) m[i][i - 1] = 1;
    for (int i = 0; i < 4; ++i) m[i][3] = -c[i];
    return m;
}

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Int acc = 0;
            for (int k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}

Mat4 mat4_pow(Mat4 base, unsigned e) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = (i == j) ? 1 : 0;
    while (e > 0) {
        if (e & 1) r = mat4_mul(r, base);
        e >>= 1;
        if (e) base = mat4_mul(base, base);
    }
    return r;
}

Int mat4_det(const Mat4& m) {
    // cofactor expansion via 3x3 minors
    auto det3 = [](const Int& a, const Int& b, const Int& c, const Int& d, const Int& e,
                   const Int& f, const Int& g, const Int& h, const Int& i) -> Int {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    };
    Int acc = 0;
    for (int r = 0; r < 4; ++r) {
        if (m[r][0] == 0) continue;
        std::array<Int, 9> s;
        int idx = 0;
        for (int rr = 0; rr < 4; ++rr) {
            if (rr == r) continue;
            for (int cc = 1; cc < 4; ++cc) s[idx++] = m[rr][cc];
        }
        Int minor = det3(s[0], s[1], s[2], s[3], s[4], s[5], s[6], s[7], s[8]);
        Int term = m[r][0] * minor;
        acc += (r % 2 == 0) ? term : -term;
    }
    return acc;
}

std::array<Int, 5> mat4_charpoly(const Mat4& m) {
    // Faddeev-LeVerrier; the trace divisions are exact over Z
    std::array<Int, 5> c;
    c[4] = 1;
    Mat4 acc = m;
    Int tr = 0;
    for (int i = 0; i < 4; ++i) tr += m[i][i];
    c[3] = -tr;
    for (int k = 2; k <= 4; ++k) {
        for (int i = 0; i < 4; ++i) acc[i][i] += c[5 - k];
        acc = mat4_mul(m, acc);
        Int trace = 0;
        for (int i = 0; i < 4; ++i) trace += acc[i][i];
        c[4 - k] = -trace / k;
    }
    return c;
}

Int jacobian_order(const WeilPolynomial& P, unsigned m) {
    if (m < 1) throw Error("m must be >= 1");
    Mat4 cm = mat4_pow(companion_int(P), m);
    Mat4 i_minus;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) i_minus[r][c] = ((r == c) ? Int(1) : Int(0)) - cm[r][c];
    return mat4_det(i_minus);
}

std::array<u64, 5> charpoly_mod(const WeilPolynomial& P, u64 ell, unsigned m) {
    if (mod_u64(P.p, ell) == 0) throw BadPrime("ell divides p");
    auto c = P.coeffs();
    std::array<u64, 5> cl;
    for (int i = 0; i < 5; ++i) cl[i] = mod_u64(c[i], ell);
    MatL cp = companion_matl(cl, ell);
    MatL cpm = matl_pow(cp, Int(static_cast<unsigned long>(m)));
    return matl_charpoly(cpm);
}

}  // namespace g2cm
