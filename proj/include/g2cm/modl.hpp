#pragma once

#include <array>
#include <vector>

#include "g2cm/bigint.hpp"
#include "g2cm/errors.hpp"

namespace g2cm {

// 4x4 matrix over F_ell (ell an odd prime below 2^13 in practice).
struct MatL {
    u64 ell = 0;
    std::array<std::array<u64, 4>, 4> a{};

    static MatL zero(u64 ell);
    static MatL identity(u64 ell);
    static MatL scalar(u64 ell, u64 c);

    bool operator==(const MatL& o) const { return ell == o.ell && a == o.a; }
    bool operator!=(const MatL& o) const { return !(*this == o); }
};

MatL matl_mul(const MatL& x, const MatL& y);
MatL matl_add(const MatL& x, const MatL& y);
MatL matl_sub(const MatL& x, const MatL& y);
MatL matl_transpose(const MatL& x);
MatL matl_pow(MatL base, const Int& e);
u64 matl_det(const MatL& m);
unsigned matl_rank(MatL m);
// right kernel basis of m
std::vector<std::array<u64, 4>> matl_kernel(const MatL& m);
// solve m*c = b for invertible m
std::array<u64, 4> matl_solve(const MatL& m, const std::array<u64, 4>& b);
// coefficients c0..c4 of det(X*I - m), monic
std::array<u64, 5> matl_charpoly(const MatL& m);
// companion matrix of a monic degree-4 polynomial over F_ell
MatL companion_matl(const std::array<u64, 5>& poly, u64 ell);

// rank of an arbitrary rectangular matrix over F_ell
unsigned rank_mod_ell(std::vector<std::vector<u64>> rows, u64 ell);

}  // namespace g2cm
