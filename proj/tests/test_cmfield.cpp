#include <doctest.h>

#include "g2cm/cmfield.hpp"
#include "g2cm/rng.hpp"

using namespace g2cm;

namespace {

const QuarticPolynomial phi5{1, 1, 1, 1};         // X^4+X^3+X^2+X+1
const QuarticPolynomial x4p49{0, 0, 0, 49};       // X^4 + 49
const QuarticPolynomial split{0, -5, 0, 4};       // (X^2-1)(X^2-4)

// full expansion of the quartic discriminant in the coefficients; written
// out independently of the Sylvester path
Int disc_formula(const QuarticPolynomial& P) {
    const Int &b = P.b, &c = P.c, &d = P.d, &e = P.e;
    return 256 * e * e * e - 192 * b * d * e * e - 128 * c * c * e * e + 144 * c * d * d * e -
           27 * d * d * d * d + 144 * b * b * c * e * e - 6 * b * b * d * d * e -
           80 * b * c * c * d * e + 18 * b * c * d * d * d + 16 * c * c * c * c * e -
           4 * c * c * c * d * d - 27 * b * b * b * b * e * e + 18 * b * b * b * c * d * e -
           4 * b * b * b * d * d * d - 4 * b * b * c * c * c * e + b * b * c * c * d * d;
}

}  // namespace

TEST_CASE("is_irreducible_quartic") {
    CHECK(!is_irreducible_quartic(split));
    CHECK(is_irreducible_quartic(x4p49));
    CHECK(is_irreducible_quartic(phi5));
    CHECK(!is_irreducible_quartic(QuarticPolynomial{0, 0, 0, 0}));   // X^4
    CHECK(!is_irreducible_quartic(QuarticPolynomial{0, 0, 0, -1}));  // X^4 - 1
}

TEST_CASE("resolvent_cubic fixed convention") {
    auto r1 = resolvent_cubic(x4p49);  // y^3 - 196y
    CHECK(r1 == std::array<Int, 4>{0, -196, 0, 1});
    auto r2 = resolvent_cubic(QuarticPolynomial{0, 0, 0, 1});  // y^3 - 4y
    CHECK(r2 == std::array<Int, 4>{0, -4, 0, 1});
    auto r3 = resolvent_cubic(phi5);  // y^3 - y^2 - 3y + 2
    CHECK(r3 == std::array<Int, 4>{2, -3, -1, 1});
}

TEST_CASE("classify_galois") {
    CHECK(classify_galois(x4p49) == GaloisType::V4);
    CHECK(classify_galois(phi5) == GaloisType::C4);
    CHECK(classify_galois(split) == GaloisType::NotIrreducible);
    // X^4 - 2: irreducible with two real roots
    CHECK(classify_galois(QuarticPolynomial{0, 0, 0, -2}) == GaloisType::NotCM);
    // X^4 + 2: totally imaginary, non-Galois (D4)
    CHECK(classify_galois(QuarticPolynomial{0, 0, 0, 2}) == GaloisType::D4_or_NonGalois);
}

TEST_CASE("classify_galois is stable under X -> -X") {
    SeedStream rng(4);
    int done = 0;
    while (done < 40) {
        QuarticPolynomial P{Int((long)rng.below(9)) - 4, Int((long)rng.below(9)) - 4,
                            Int((long)rng.below(9)) - 4, Int((long)rng.below(9)) - 4};
        QuarticPolynomial Q{-P.b, P.c, -P.d, P.e};  // P(-X), sign-normalized
        CHECK(classify_galois(P) == classify_galois(Q));
        ++done;
    }
}

TEST_CASE("is_primitive_cm") {
    CHECK(is_primitive_cm(phi5));
    CHECK(!is_primitive_cm(x4p49));
    CHECK_THROWS_AS(is_primitive_cm(split), NotAQuarticCMField);
    CHECK_THROWS_AS(is_primitive_cm(QuarticPolynomial{0, 0, 0, -2}), NotAQuarticCMField);
}

TEST_CASE("discriminant: frozen values and formula oracle") {
    CHECK(discriminant(phi5) == 125);
    CHECK(discriminant(split) != 0);
    // repeated root: (X^2-1)^2 = X^4 - 2X^2 + 1
    CHECK(discriminant(QuarticPolynomial{0, -2, 0, 1}) == 0);

    SeedStream rng(9);
    for (int i = 0; i < 60; ++i) {
        QuarticPolynomial P{Int((long)rng.below(21)) - 10, Int((long)rng.below(21)) - 10,
                            Int((long)rng.below(21)) - 10, Int((long)rng.below(21)) - 10};
        CHECK(discriminant(P) == disc_formula(P));
    }
}

TEST_CASE("count_real_roots_quartic (Sturm)") {
    CHECK(count_real_roots_quartic(x4p49) == 0);
    CHECK(count_real_roots_quartic(phi5) == 0);
    CHECK(count_real_roots_quartic(QuarticPolynomial{0, 0, 0, -2}) == 2);   // X^4-2
    CHECK(count_real_roots_quartic(split) == 4);
    CHECK(count_real_roots_quartic(QuarticPolynomial{0, -10, 0, 1}) == 4);  // X^4-10X^2+1
}

TEST_CASE("ell_ramification screening") {
    CHECK(ell_ramification(phi5, 11) == Ramification::Unramified);
    CHECK(ell_ramification(phi5, 5) == Ramification::Indeterminate);  // 5 | 125
    CHECK(ell_ramification(phi5, 3) == Ramification::Unramified);
}

TEST_CASE("disc vs squarefree on random quartics") {
    SeedStream rng(77);
    for (int i = 0; i < 50; ++i) {
        QuarticPolynomial P{Int((long)rng.below(11)) - 5, Int((long)rng.below(11)) - 5,
                            Int((long)rng.below(11)) - 5, Int((long)rng.below(11)) - 5};
        if (is_irreducible_quartic(P)) CHECK(discriminant(P) != 0);
    }
}
