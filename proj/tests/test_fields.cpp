#include <doctest.h>

#include "g2cm/fields.hpp"
#include "g2cm/polynomial.hpp"

using namespace g2cm;

TEST_CASE("prime field basics in F_7") {
    FieldRef F = Field::prime_field(7);
    CHECK(F->degree() == 1);
    CHECK(F->order() == 7);
    FieldElement three = F->from_u64(3);
    FieldElement five = F->from_u64(5);
    CHECK(three * five == F->one());          // 15 = 1 mod 7
    CHECK(field_inv(three) == five);
    CHECK(field_inv(F->one()) == F->one());
    CHECK_THROWS_AS(field_inv(F->zero()), DivisionByZero);
}

TEST_CASE("build_extension picks the deterministic modulus") {
    FieldRef F = build_extension(5, 2);
    // squares mod 5 are {0,1,4}; X^2+2 is the first irreducible in counter order
    REQUIRE(F->modulus().size() == 2);
    CHECK(F->modulus()[0] == 2);
    CHECK(F->modulus()[1] == 0);
    // same (p, n) gives the same descriptor
    CHECK(build_extension(5, 2) == F);

    CHECK_THROWS_AS(build_extension(2, 3), EvenCharacteristic);
    CHECK_THROWS_AS(build_extension(9, 2), CompositeModulus);
    CHECK_THROWS_AS(build_extension(5, 70), DegreeCapExceeded);
}

TEST_CASE("extension modulus is irreducible (gcd criterion)") {
    // verified by exhaustive search over degree <= 2 factors
    FieldRef F = build_extension(7, 4);
    const auto& m = F->modulus();
    REQUIRE(m.size() == 4);
    FieldRef Fp = Field::prime_field(7);
    std::vector<u64> full = m;
    full.push_back(1);
    Poly mod = Poly::from_u64(Fp, full);
    // no roots in F_7
    for (u64 a = 0; a < 7; ++a) {
        CHECK(!mod.eval(Fp->from_u64(a)).is_zero());
    }
    // no monic quadratic factor
    for (u64 c1 = 0; c1 < 7; ++c1)
        for (u64 c0 = 0; c0 < 7; ++c0) {
            Poly q = Poly::from_u64(Fp, {c0, c1, 1});
            CHECK(!poly_mod(mod, q).is_zero());
        }
}

TEST_CASE("field axioms on seeded samples") {
    for (auto [p, n] : {std::pair<int, int>{5, 2}, {7, 3}, {11, 1}}) {
        FieldRef F = build_extension(p, n, 8);
        SeedStream rng(42);
        for (int i = 0; i < 500; ++i) {
            FieldElement a = F->sample(rng), b = F->sample(rng), c = F->sample(rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == F->zero());
            if (!a.is_zero()) CHECK(a * field_inv(a) == F->one());
        }
    }
}

TEST_CASE("inv round-trips on 100 seeded elements of F_25") {
    FieldRef F = build_extension(5, 2);
    SeedStream rng(7);
    int done = 0;
    while (done < 100) {
        FieldElement a = F->sample(rng);
        if (a.is_zero()) continue;
        CHECK(field_inv(a) * a == F->one());
        ++done;
    }
}

TEST_CASE("field_pow: Fermat and Lagrange") {
    FieldRef F5 = Field::prime_field(5);
    CHECK(field_pow(F5->from_u64(2), 4) == F5->one());
    FieldRef F49 = build_extension(7, 2);
    SeedStream rng(3);
    CHECK(field_pow(F49->zero(), 0) == F49->one());  // 0^0 = 1
    int done = 0;
    while (done < 100) {
        FieldElement a = F49->sample(rng);
        CHECK(field_pow(a, 0) == F49->one());
        if (a.is_zero()) continue;
        CHECK(field_pow(a, F49->unit_group_order()) == F49->one());
        ++done;
    }
}

TEST_CASE("frobenius is additive") {
    FieldRef F = build_extension(5, 4, 8);
    SeedStream rng(11);
    for (int i = 0; i < 200; ++i) {
        FieldElement a = F->sample(rng), b = F->sample(rng);
        CHECK(frobenius_p(a + b) == frobenius_p(a) + frobenius_p(b));
    }
}

TEST_CASE("multiplicative_order") {
    CHECK(multiplicative_order(7, 5) == 4);
    CHECK(multiplicative_order(11, 5) == 1);
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK_THROWS_AS(multiplicative_order(10, 5), NotCoprime);
    // k divides ell - 1
    for (u64 ell : {5ULL, 7ULL, 13ULL, 8191ULL}) {
        for (Int q : {Int(2), Int(3), Int(10), Int(123456)}) {
            if (mod_u64(q, ell) == 0) continue;
            CHECK((ell - 1) % multiplicative_order(q, ell) == 0);
        }
    }
}

TEST_CASE("field_sqrt canonical root and round trips") {
    FieldRef F7 = Field::prime_field(7);
    auto r = field_sqrt(F7->from_u64(2));
    REQUIRE(r.has_value());
    CHECK(*r == F7->from_u64(3));  // canonical pick: min(3, 4)
    CHECK(field_sqrt(F7->zero()) == F7->zero());
    CHECK(!field_sqrt(F7->from_u64(3)).has_value());  // 3 is a non-residue mod 7

    FieldRef F = build_extension(11, 2);
    SeedStream rng(5);
    for (int i = 0; i < 100; ++i) {
        FieldElement a = F->sample(rng);
        FieldElement sq = a * a;
        auto root = field_sqrt(sq);
        REQUIRE(root.has_value());
        CHECK((*root == a || *root == -a));
    }
}

TEST_CASE("embed: homomorphism and tower compatibility") {
    FieldRef F7 = Field::prime_field(7);
    FieldRef F7_4 = build_extension(7, 4);
    CHECK(embed(F7->zero(), F7, F7_4) == F7_4->zero());
    CHECK(embed(F7->one(), F7, F7_4) == F7_4->one());

    SeedStream rng(9);
    for (int i = 0; i < 100; ++i) {
        FieldElement a = F7->sample(rng), b = F7->sample(rng);
        CHECK(embed(a + b, F7, F7_4) == embed(a, F7, F7_4) + embed(b, F7, F7_4));
        CHECK(embed(a * b, F7, F7_4) == embed(a, F7, F7_4) * embed(b, F7, F7_4));
    }

    FieldRef F7_2 = build_extension(7, 2);
    for (int i = 0; i < 50; ++i) {
        FieldElement a = F7_2->sample(rng), b = F7_2->sample(rng);
        CHECK(embed(a + b, F7_2, F7_4) == embed(a, F7_2, F7_4) + embed(b, F7_2, F7_4));
        CHECK(embed(a * b, F7_2, F7_4) == embed(a, F7_2, F7_4) * embed(b, F7_2, F7_4));
    }

    // composite along the tower equals the direct embedding
    for (int i = 0; i < 20; ++i) {
        FieldElement a = F7->sample(rng);
        CHECK(embed(embed(a, F7, F7_2), F7_2, F7_4) == embed(a, F7, F7_4));
    }

    FieldRef F7_3 = build_extension(7, 3);
    FieldElement x = F7_3->one();
    CHECK_THROWS_AS(embed(x, F7_3, F7_4), IncompatibleTower);
    FieldRef F5 = Field::prime_field(5);
    CHECK_THROWS_AS(embed(F5->one(), F5, F7_4), IncompatibleTower);
}

TEST_CASE("polynomial arithmetic, gcd and xgcd") {
    FieldRef F = build_extension(5, 2);
    SeedStream rng(13);
    auto rand_poly = [&](int deg) {
        std::vector<FieldElement> c;
        for (int i = 0; i <= deg; ++i) c.push_back(F->sample(rng));
        return Poly(F, std::move(c));
    };
    for (int i = 0; i < 50; ++i) {
        Poly a = rand_poly(4), b = rand_poly(2);
        if (b.is_zero()) continue;
        auto [q, r] = poly_divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.deg() < b.deg());
        XgcdResult x = poly_xgcd(a, b);
        CHECK(x.s * a + x.t * b == x.g);
        if (!a.is_zero()) CHECK(poly_mod(a, x.g).is_zero());
    }
}

TEST_CASE("find_root and sqrt_mod_irreducible") {
    FieldRef F = Field::prime_field(13);
    // (x - 5)(x - 9) has roots 5 and 9
    Poly g = Poly::from_u64(F, {45 % 13, 13 - ((5 + 9) % 13), 1});
    FieldElement r = find_root(g, SeedStream(1));
    CHECK(g.eval(r).is_zero());

    // x^2 + 2 is irreducible mod 13 (squares are {0,1,3,4,9,10,12})
    Poly u = Poly::from_u64(F, {2, 0, 1});
    SeedStream rng(2);
    for (int i = 0; i < 30; ++i) {
        std::vector<FieldElement> c = {F->sample(rng), F->sample(rng)};
        Poly a(F, std::move(c));
        Poly sq = poly_mod(a * a, u);
        auto root = sqrt_mod_irreducible(sq, u);
        REQUIRE(root.has_value());
        Poly back = poly_mod(*root * *root, u);
        CHECK(back == sq);
    }
}
