#include <doctest.h>

#include "totreal/cyclo.hpp"
#include "totreal/numberfield.hpp"

using namespace totreal;

namespace {

FieldPtr sqrt2_field() { return NumberField::create(ZPoly({-2, 0, 1})); }
FieldPtr sqrt3_field() { return NumberField::create(ZPoly({-3, 0, 1})); }
FieldPtr golden_field() { return NumberField::create(ZPoly({-1, -1, 1})); } // x^2-x-1

FieldElement elem(const FieldPtr& K, std::vector<Rat> c) { return FieldElement(K, std::move(c)); }

} // namespace

TEST_CASE("field creation and validation") {
    auto K = sqrt2_field();
    CHECK(K->degree() == 2);
    REQUIRE(K->embeddings().size() == 2);
    // embeddings near -1.414 and +1.414
    CHECK(K->embeddings()[0].refine_to(20).hi < Rat(-14142, 10001));
    CHECK(K->embeddings()[1].refine_to(20).lo > Rat(14142, 10001));

    CHECK_THROWS_AS(NumberField::create(ZPoly({1, 0, 1})), not_totally_real_error);   // x^2+1
    CHECK_THROWS_AS(NumberField::create(ZPoly({-1, -1, 0, 1})), not_totally_real_error); // x^3-x-1
    CHECK_THROWS_AS(NumberField::create(ZPoly({-1, 0, 1})), not_irreducible_error);   // x^2-1
    CHECK_THROWS_AS(NumberField::create(ZPoly({-2, 0, 2})), not_monic_error);
    CHECK(NumberField::rationals()->degree() == 1);
}

TEST_CASE("element arithmetic") {
    auto K = sqrt2_field();
    FieldElement one = FieldElement::one(K);
    FieldElement sqrt2 = FieldElement::generator(K);
    // (1 + sqrt2)(-1 + sqrt2) = 1
    CHECK((one + sqrt2) * (sqrt2 - Rat(1)) == one);
    CHECK(elem_arith(ElemOp::mul, one + sqrt2, sqrt2 - Rat(1)) == one);
    CHECK(elem_arith(ElemOp::inv, sqrt2, sqrt2) == sqrt2 * Rat(1, 2));
    CHECK(elem_arith(ElemOp::sub, one, one).is_zero());
    // inv(sqrt2) = sqrt2 / 2
    CHECK(sqrt2.inverse() == sqrt2 * Rat(1, 2));
    CHECK_THROWS_AS(FieldElement::zero(K).inverse(), division_by_zero_error);

    auto Kphi = golden_field();
    FieldElement phi = FieldElement::generator(Kphi);
    CHECK(phi * phi == phi + Rat(1)); // theta^2 = theta + 1

    auto K3 = sqrt3_field();
    CHECK_THROWS_AS((void)(FieldElement::one(K3) + one), field_mismatch_error);
}

TEST_CASE("field axioms on sampled elements") {
    auto K = NumberField::create(cos_minpoly(7));
    SplitMix64 rng(42);
    auto random_elem = [&] {
        std::vector<Rat> c(3);
        for (auto& v : c) v = Rat(rng.range(-9, 9), rng.range(1, 4));
        return FieldElement(K, std::move(c));
    };
    for (int trial = 0; trial < 25; ++trial) {
        FieldElement x = random_elem(), y = random_elem(), z = random_elem();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) CHECK(x * x.inverse() == FieldElement::one(K));
        // norm multiplicativity
        CHECK(norm(x * y) == norm(x) * norm(y));
    }
}

TEST_CASE("trace and norm") {
    auto K = sqrt2_field();
    FieldElement sqrt2 = FieldElement::generator(K);
    CHECK(trace_norm(sqrt2) == std::pair<Rat, Rat>(Rat(0), Rat(-2)));
    CHECK(trace_norm(FieldElement::one(K)) == std::pair<Rat, Rat>(Rat(2), Rat(1)));

    auto K3 = sqrt3_field();
    FieldElement x = elem(K3, {Rat(2), Rat(1)}); // 2 + sqrt3
    // oracle: (2+sqrt3)(2-sqrt3) = 1, sum = 4
    CHECK(trace_norm(x) == std::pair<Rat, Rat>(Rat(4), Rat(1)));

    auto K7 = NumberField::create(cos_minpoly(7));
    CHECK(trace(FieldElement::one(K7)) == 3);
    CHECK(norm(FieldElement::one(K7)) == 1);
}

TEST_CASE("total positivity") {
    auto K = sqrt2_field();
    FieldElement sqrt2 = FieldElement::generator(K);
    CHECK(is_totally_positive(sqrt2 + Rat(2)));       // 2 + sqrt2
    CHECK(!is_totally_positive(sqrt2 + Rat(1)));      // 1 + sqrt2 (conjugate negative)
    CHECK(!is_totally_positive(FieldElement::zero(K)));
    CHECK(is_totally_positive(FieldElement::one(K)));
    // x totally positive implies x*y^2 totally positive
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        FieldElement y = elem(K, {Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5))});
        if (y.is_zero()) continue;
        CHECK(is_totally_positive((sqrt2 + Rat(2)) * y * y));
    }
}

TEST_CASE("minimal polynomials of elements") {
    auto K = sqrt2_field();
    CHECK(minpoly_of(FieldElement::generator(K)) == ZPoly({-2, 0, 1}));
    CHECK(minpoly_of(FieldElement::from_rational(K, Rat(7))) == ZPoly({-7, 1}));
    CHECK(minpoly_of(FieldElement::generator(K) * Rat(1, 2)) == ZPoly({-1, 0, 2})); // 2x^2-1

    auto Kphi = golden_field();
    FieldElement theta1 = FieldElement::generator(Kphi) + Rat(1);
    // oracle: substitute x - 1 into x^2 - x - 1: (x-1)^2-(x-1)-1 = x^2-3x+1
    CHECK(minpoly_of(theta1) == ZPoly({1, -3, 1}));
}

TEST_CASE("integrality") {
    auto Kphi = golden_field();
    CHECK(is_integral(FieldElement::generator(Kphi))); // (1+sqrt5)/2
    CHECK(!is_integral(FieldElement::from_rational(Kphi, Rat(1, 2))));
    auto K = sqrt2_field();
    CHECK(!is_integral(FieldElement::generator(K) * Rat(1, 2))); // sqrt2/2
}

TEST_CASE("house comparison") {
    auto K = sqrt2_field();
    FieldElement sqrt2 = FieldElement::generator(K);
    CHECK(house_compare(sqrt2, Rat(2)) == Ordering3::LT);
    CHECK(house_compare(FieldElement::from_rational(K, Rat(2)), Rat(2)) == Ordering3::EQ);
    CHECK(house_compare(sqrt2 + Rat(1), Rat(2)) == Ordering3::GT); // house = 1+sqrt2
    CHECK(house_compare(FieldElement::zero(K), Rat(-1)) == Ordering3::GT);
    CHECK(house_compare(FieldElement::zero(K), Rat(0)) == Ordering3::EQ);
    // monotone: LT at r stays LT at r' > r
    CHECK(house_compare(sqrt2, Rat(3)) == Ordering3::LT);
    CHECK(house_compare(sqrt2, Rat(3, 2)) == Ordering3::LT);
    CHECK(house_compare(sqrt2, Rat(7, 5)) == Ordering3::GT); // sqrt2 > 1.4

    // g(1/7) has house 2cos(pi/7) < 2
    auto K7 = NumberField::create(cos_minpoly(7));
    CHECK(house_compare(FieldElement::generator(K7), Rat(2)) == Ordering3::LT);

    // monotone on sampled elements and radii
    SplitMix64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        FieldElement x(K, {Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5))});
        Rat r(rng.range(0, 8), rng.range(1, 3));
        Rat r2 = r + Rat(rng.range(1, 5));
        if (house_compare(x, r) == Ordering3::LT) CHECK(house_compare(x, r2) == Ordering3::LT);
        if (house_compare(x, r2) == Ordering3::GT) CHECK(house_compare(x, r) == Ordering3::GT);
    }
}

TEST_CASE("square roots in the field") {
    auto Kphi = golden_field();
    FieldElement phi = FieldElement::generator(Kphi);
    // (3+sqrt5)/2 = phi^2, coordinates phi + 1
    FieldElement alpha = phi + Rat(1);
    auto root = sqrt_in_field(alpha);
    REQUIRE(root.has_value());
    CHECK(*root == phi);

    auto K = sqrt2_field();
    auto r2 = sqrt_in_field(FieldElement::from_rational(K, Rat(2)));
    REQUIRE(r2.has_value());
    CHECK(*r2 == FieldElement::generator(K));

    auto K3 = sqrt3_field();
    CHECK(!sqrt_in_field(FieldElement::from_rational(K3, Rat(2))).has_value());
    {
        // oracle: integer-coordinate search; any square root of 2 would have
        // house sqrt2, so small coordinates suffice -- verify none squares to 2
        bool found = false;
        for (long a = -3; a <= 3; ++a)
            for (long b = -3; b <= 3; ++b) {
                FieldElement y = elem(K3, {Rat(a), Rat(b)});
                if (y * y == FieldElement::from_rational(K3, Rat(2))) found = true;
            }
        CHECK(!found);
    }

    CHECK_THROWS_AS(sqrt_in_field(FieldElement::from_rational(K, Rat(-1))),
                    not_totally_nonnegative_error);

    // sqrt(x^2) = +-x on random elements
    SplitMix64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        FieldElement x = elem(K, {Rat(rng.range(-6, 6)), Rat(rng.range(-6, 6))});
        if (x.is_zero()) continue;
        auto z = sqrt_in_field(x * x);
        REQUIRE(z.has_value());
        CHECK((*z == x || *z == -x));
    }

    // non-integral inputs work through denominator scaling
    auto q = sqrt_in_field(FieldElement::from_rational(K, Rat(9, 4)));
    REQUIRE(q.has_value());
    CHECK(*q == FieldElement::from_rational(K, Rat(3, 2)));
}

TEST_CASE("square roots in a degree-4 field") {
    // K = Q(2cos(pi/8)): theta^2 = 2 + sqrt2, so both theta^2 and its
    // square root live in K
    auto K = NumberField::create(ZPoly({2, 0, -4, 0, 1})); // x^4 - 4x^2 + 2
    FieldElement theta = FieldElement::generator(K);
    auto root = sqrt_in_field(theta * theta);
    REQUIRE(root.has_value());
    CHECK((*root == theta || *root == -theta));
    // 2 is a square in K: its roots are +-(theta^2 - 2) = +-sqrt2
    auto r2 = sqrt_in_field(FieldElement::from_rational(K, Rat(2)));
    REQUIRE(r2.has_value());
    CHECK((*r2 == theta * theta - Rat(2) || *r2 == -(theta * theta) + Rat(2)));
    // 3 is totally positive but has no square root in K
    CHECK(!sqrt_in_field(FieldElement::from_rational(K, Rat(3))).has_value());
    // sqrt2 itself is not totally nonnegative as an element of K
    CHECK_THROWS_AS(sqrt_in_field(theta * theta - Rat(2)), not_totally_nonnegative_error);
}

TEST_CASE("decision stability under refinement") {
    auto K = sqrt2_field();
    FieldElement x = FieldElement::generator(K) + Rat(2);
    bool before = is_totally_positive(x);
    for (int i = 0; i < 50; ++i)
        for (const auto& e : K->embeddings()) e.refine_step();
    CHECK(is_totally_positive(x) == before);
}
