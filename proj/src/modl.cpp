#include "g2cm/modl.hpp"

namespace g2cm {

namespace {

using u128 = unsigned __int128;

u64 addm(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}
u64 subm(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }
u64 mulm(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 invm(u64 a, u64 m) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw DivisionByZero("not invertible mod ell");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<u64>(t);
}

// small dense polynomials over F_ell for the symbolic charpoly
using PolyL = std::vector<u64>;

PolyL pl_mul(const PolyL& a, const PolyL& b, u64 m) {
    if (a.empty() || b.empty()) return {};
    PolyL r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = addm(r[i + j], mulm(a[i], b[j], m), m);
    return r;
}

PolyL pl_add(PolyL a, const PolyL& b, u64 m) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = addm(a[i], b[i], m);
    return a;
}

PolyL pl_neg(PolyL a, u64 m) {
    for (u64& c : a) c = c == 0 ? 0 : m - c;
    return a;
}

PolyL pl_det(std::vector<std::vector<PolyL>> mat, u64 m) {
    size_t n = mat.size();
    if (n == 1) return mat[0][0];
    PolyL acc;
    for (size_t i = 0; i < n; ++i) {
        if (mat[i][0].empty()) continue;
        std::vector<std::vector<PolyL>> minor;
        minor.reserve(n - 1);
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            minor.emplace_back(mat[r].begin() + 1, mat[r].end());
        }
        PolyL term = pl_mul(mat[i][0], pl_det(std::move(minor), m), m);
        if (i % 2 == 1) term = pl_neg(std::move(term), m);
        acc = pl_add(std::move(acc), term, m);
    }
    return acc;
}

}  // namespace

MatL MatL::zero(u64 ell) {
    MatL m;
    m.ell = ell;
    return m;
}

MatL MatL::identity(u64 ell) { return scalar(ell, 1); }

MatL MatL::scalar(u64 ell, u64 c) {
    MatL m = zero(ell);
    for (int i = 0; i < 4; ++i) m.a[i][i] = c % ell;
    return m;
}

MatL matl_mul(const MatL& x, const MatL& y) {
    MatL r = MatL::zero(x.ell);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (x.a[i][k] == 0) continue;
            for (int j = 0; j < 4; ++j)
                r.a[i][j] = addm(r.a[i][j], mulm(x.a[i][k], y.a[k][j], x.ell), x.ell);
        }
    return r;
}

MatL matl_add(const MatL& x, const MatL& y) {
    MatL r = MatL::zero(x.ell);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.a[i][j] = addm(x.a[i][j], y.a[i][j], x.ell);
    return r;
}

MatL matl_sub(const MatL& x, const MatL& y) {
    MatL r = MatL::zero(x.ell);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.a[i][j] = subm(x.a[i][j], y.a[i][j], x.ell);
    return r;
}

MatL matl_transpose(const MatL& x) {
    MatL r = MatL::zero(x.ell);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.a[i][j] = x.a[j][i];
    return r;
}

MatL matl_pow(MatL base, const Int& e) {
    MatL r = MatL::identity(base.ell);
    size_t bits = bit_length(e);
    for (size_t i = bits; i-- > 0;) {
        r = matl_mul(r, r);
        if (bit_at(e, i)) r = matl_mul(r, base);
    }
    return r;
}

u64 matl_det(const MatL& m) {
    // Gaussian elimination, tracking the product of pivots
    MatL w = m;
    u64 ell = m.ell;
    u64 det = 1;
    for (int col = 0; col < 4; ++col) {
        int pivot = -1;
        for (int r = col; r < 4; ++r)
            if (w.a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(w.a[pivot], w.a[col]);
            det = det == 0 ? 0 : ell - det;
        }
        det = mulm(det, w.a[col][col], ell);
        u64 inv = invm(w.a[col][col], ell);
        for (int r = col + 1; r < 4; ++r) {
            if (w.a[r][col] == 0) continue;
            u64 factor = mulm(w.a[r][col], inv, ell);
            for (int c = col; c < 4; ++c)
                w.a[r][c] = subm(w.a[r][c], mulm(factor, w.a[col][c], ell), ell);
        }
    }
    return det;
}

unsigned rank_mod_ell(std::vector<std::vector<u64>> rows, u64 ell) {
    unsigned rank = 0;
    size_t ncols = 0;
    for (const auto& r : rows) ncols = std::max(ncols, r.size());
    for (auto& r : rows) r.resize(ncols, 0);
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < rows.size(); ++col) {
        size_t pivot = row;
        while (pivot < rows.size() && rows[pivot][col] % ell == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[row]);
        u64 inv = invm(rows[row][col] % ell, ell);
        for (size_t r = row + 1; r < rows.size(); ++r) {
            u64 factor = mulm(rows[r][col] % ell, inv, ell);
            if (factor == 0) continue;
            for (size_t c = col; c < ncols; ++c)
                rows[r][c] = subm(rows[r][c] % ell, mulm(factor, rows[row][c] % ell, ell), ell);
        }
        ++row;
        ++rank;
    }
    return rank;
}

unsigned matl_rank(MatL m) {
    std::vector<std::vector<u64>> rows(4, std::vector<u64>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[i][j] = m.a[i][j];
    return rank_mod_ell(std::move(rows), m.ell);
}

std::vector<std::array<u64, 4>> matl_kernel(const MatL& m) {
    u64 ell = m.ell;
    // reduced row echelon form
    std::array<std::array<u64, 4>, 4> w = m.a;
    std::array<int, 4> pivot_col{-1, -1, -1, -1};
    int row = 0;
    for (int col = 0; col < 4 && row < 4; ++col) {
        int p = -1;
        for (int r = row; r < 4; ++r)
            if (w[r][col] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(w[p], w[row]);
        u64 inv = invm(w[row][col], ell);
        for (int c = 0; c < 4; ++c) w[row][c] = mulm(w[row][c], inv, ell);
        for (int r = 0; r < 4; ++r) {
            if (r == row || w[r][col] == 0) continue;
            u64 factor = w[r][col];
            for (int c = 0; c < 4; ++c)
                w[r][c] = subm(w[r][c], mulm(factor, w[row][c], ell), ell);
        }
        pivot_col[row] = col;
        ++row;
    }
    std::array<bool, 4> is_pivot{false, false, false, false};
    for (int r = 0; r < row; ++r) is_pivot[pivot_col[r]] = true;
    std::vector<std::array<u64, 4>> basis;
    for (int free_col = 0; free_col < 4; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::array<u64, 4> v{0, 0, 0, 0};
        v[free_col] = 1;
        for (int r = 0; r < row; ++r) {
            v[pivot_col[r]] = (w[r][free_col] == 0) ? 0 : ell - w[r][free_col];
        }
        basis.push_back(v);
    }
    return basis;
}

std::array<u64, 4> matl_solve(const MatL& m, const std::array<u64, 4>& b) {
    u64 ell = m.ell;
    std::array<std::array<u64, 5>, 4> w{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) w[i][j] = m.a[i][j];
        w[i][4] = b[i] % ell;
    }
    for (int col = 0; col < 4; ++col) {
        int p = -1;
        for (int r = col; r < 4; ++r)
            if (w[r][col] != 0) {
                p = r;
                break;
            }
        if (p < 0) throw DivisionByZero("singular system");
        std::swap(w[p], w[col]);
        u64 inv = invm(w[col][col], ell);
        for (int c = 0; c < 5; ++c) w[col][c] = mulm(w[col][c], inv, ell);
        for (int r = 0; r < 4; ++r) {
            if (r == col || w[r][col] == 0) continue;
            u64 factor = w[r][col];
            for (int c = 0; c < 5; ++c)
                w[r][c] = subm(w[r][c], mulm(factor, w[col][c], ell), ell);
        }
    }
    return {w[0][4], w[1][4], w[2][4], w[3][4]};
}

std::array<u64, 5> matl_charpoly(const MatL& m) {
    u64 ell = m.ell;
    std::vector<std::vector<PolyL>> sym(4, std::vector<PolyL>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            PolyL entry;
            u64 c = m.a[i][j];
            if (i == j) {
                entry = {c == 0 ? 0 : ell - c, 1};  // X - m_ii
            } else if (c != 0) {
                entry = {ell - c};  // -m_ij
            }
            sym[i][j] = entry;
        }
    PolyL det = pl_det(std::move(sym), ell);
    std::array<u64, 5> out{0, 0, 0, 0, 0};
    for (size_t i = 0; i < det.size() && i < 5; ++i) out[i] = det[i];
    return out;
}

MatL companion_matl(const std::array<u64, 5>& poly, u64 ell) {
    MatL m = MatL::zero(ell);
    for (int i = 1; i < 4; ++i) m.a[i][i - 1] = 1;
    for (int i = 0; i < 4; ++i) m.a[i][3] = poly[i] == 0 ? 0 : ell - (poly[i] % ell);
    return m;
}

}  // namespace g2cm
