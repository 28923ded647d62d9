#include <doctest.h>

#include "../common/oracles.hpp"
#include "totreal/battery.hpp"
#include "totreal/qlattice.hpp"

using namespace totreal;
using totreal::testing::box_search_represents;

namespace {

std::vector<std::vector<FieldElement>> rational_gram(const FieldPtr& K,
                                                     const std::vector<std::vector<Rat>>& g) {
    std::vector<std::vector<FieldElement>> out;
    for (const auto& row : g) {
        std::vector<FieldElement> r;
        for (const auto& v : row) r.push_back(FieldElement::from_rational(K, v));
        out.push_back(std::move(r));
    }
    return out;
}

QuadraticLattice identity_lattice(const FieldPtr& K, long n) {
    std::vector<std::vector<Rat>> g(static_cast<std::size_t>(n),
                                    std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    for (long i = 0; i < n; ++i) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return lattice_create(K, rational_gram(K, g));
}

} // namespace

TEST_CASE("lattice validation") {
    auto Q = NumberField::rationals();
    // W^2 + WX + X^2
    auto hex = lattice_create(Q, rational_gram(Q, {{Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1)}}));
    CHECK(hex.rank() == 2);
    CHECK(is_positive_definite(hex));
    CHECK_NOTHROW(identity_lattice(Q, 4));
    CHECK_THROWS_AS(
        lattice_create(Q, rational_gram(Q, {{Rat(1), Rat(1, 3)}, {Rat(1, 3), Rat(1)}})),
        offdiagonal_not_half_integral_error);
    CHECK_THROWS_AS(
        lattice_create(Q, rational_gram(Q, {{Rat(1), Rat(0)}, {Rat(1, 2), Rat(1)}})),
        not_symmetric_error);
    CHECK_THROWS_AS(
        lattice_create(Q, rational_gram(Q, {{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1)}})),
        diagonal_not_integral_error);
}

TEST_CASE("positive definiteness over fields") {
    auto K2 = NumberField::create(ZPoly({-2, 0, 1}));
    CHECK(is_positive_definite(identity_lattice(K2, 2)));
    FieldElement sqrt2 = FieldElement::generator(K2);
    auto diag_sqrt2 = QuadraticLattice(
        K2, {{sqrt2 * sqrt2 * Rat(1), FieldElement::zero(K2)},
             {FieldElement::zero(K2), FieldElement::one(K2)}});
    CHECK(is_positive_definite(diag_sqrt2)); // diag(2, 1)
    auto bad = QuadraticLattice(K2, {{sqrt2, FieldElement::zero(K2)},
                                     {FieldElement::zero(K2), FieldElement::one(K2)}});
    CHECK(!is_positive_definite(bad)); // conjugate of sqrt2 negative
    auto bad2 = QuadraticLattice(K2, {{sqrt2 + Rat(1), FieldElement::zero(K2)},
                                      {FieldElement::zero(K2), FieldElement::one(K2)}});
    CHECK(!is_positive_definite(bad2)); // 1 - sqrt2 < 0
}

TEST_CASE("restriction of scalars") {
    auto K2 = NumberField::create(ZPoly({-2, 0, 1}));
    auto L = identity_lattice(K2, 1);
    ZRestriction r = restrict_scalars(L);
    CHECK(r.dim == 2);
    CHECK(r.trace_gram == QMat{{Rat(2), Rat(0)}, {Rat(0), Rat(4)}});

    auto Q = NumberField::rationals();
    ZRestriction rq = restrict_scalars(identity_lattice(Q, 2));
    CHECK(rq.trace_gram == QMat{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});

    auto hex = lattice_create(Q, rational_gram(Q, {{Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1)}}));
    CHECK(restrict_scalars(hex).trace_gram == QMat{{Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1)}});

    // trace identity on random integer vectors
    auto K3 = NumberField::create(ZPoly({-3, 0, 1}));
    auto L3 = lattice_create(
        K3, {{FieldElement::from_rational(K3, Rat(2)), FieldElement(K3, {Rat(1, 2), Rat(1, 2)})},
             {FieldElement(K3, {Rat(1, 2), Rat(1, 2)}), FieldElement(K3, {Rat(2), Rat(1)})}});
    ZRestriction r3 = restrict_scalars(L3);
    SplitMix64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Int> x(4);
        for (auto& v : x) v = rng.range(-7, 7);
        Rat lhs(0);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                lhs += Rat(x[i]) * r3.trace_gram[i][j] * Rat(x[j]);
        auto v = r3.to_field(x);
        CHECK(lhs == trace(L3.quadratic_value(v)));
    }

    CHECK_THROWS_AS(
        restrict_scalars(QuadraticLattice(
            K3, {{-FieldElement::one(K3), FieldElement::zero(K3)},
                 {FieldElement::zero(K3), FieldElement::one(K3)}})),
        not_positive_definite_error);
}

TEST_CASE("representation over Q") {
    auto Q = NumberField::rationals();
    auto four_squares = identity_lattice(Q, 4);
    RepresentResult r = represent(four_squares, FieldElement::from_rational(Q, Rat(7)));
    REQUIRE(r.status == RepresentResult::Status::Found);
    CHECK(r.witness == std::vector<Int>{Int(2), Int(1), Int(1), Int(1)});

    auto three_squares = identity_lattice(Q, 3);
    RepresentResult r7 = represent(three_squares, FieldElement::from_rational(Q, Rat(7)));
    CHECK(r7.status == RepresentResult::Status::Exhausted);
    CHECK(!box_search_represents(three_squares, FieldElement::from_rational(Q, Rat(7))));
    RepresentResult r6 = represent(three_squares, FieldElement::from_rational(Q, Rat(6)));
    CHECK(r6.status == RepresentResult::Status::Found);

    // zero is always represented, by the zero vector
    RepresentResult rz = represent(three_squares, FieldElement::zero(Q));
    CHECK(rz.status == RepresentResult::Status::Found);

    // tight budget reports BudgetExceeded
    RepresentResult rb = represent(three_squares, FieldElement::from_rational(Q, Rat(7)), 3);
    CHECK(rb.status == RepresentResult::Status::BudgetExceeded);

    CHECK_THROWS_AS(represent(three_squares, FieldElement::from_rational(Q, Rat(-1))),
                    not_totally_nonnegative_error);
    CHECK_THROWS_AS(represent(three_squares, FieldElement::from_rational(Q, Rat(1, 2))),
                    not_integral_error);
}

TEST_CASE("representation over real quadratic fields") {
    // Maass: X^2+Y^2+Z^2 represents (3+sqrt5)/2 = phi^2 with witness (phi,0,0)
    auto K5 = NumberField::create(ZPoly({-1, -1, 1}));
    auto L = identity_lattice(K5, 3);
    FieldElement phi = FieldElement::generator(K5);
    RepresentResult r = represent(L, phi + Rat(1)); // phi^2 = phi + 1
    REQUIRE(r.status == RepresentResult::Status::Found);
    REQUIRE(r.field_witness.size() == 3);
    CHECK(r.field_witness[0] == phi);
    CHECK(r.field_witness[1].is_zero());
    CHECK(r.field_witness[2].is_zero());

    // X^2+Y^2 over Q(sqrt3) does not represent 2+sqrt3
    auto K3 = NumberField::create(ZPoly({-3, 0, 1}));
    auto L2 = identity_lattice(K3, 2);
    FieldElement eps(K3, {Rat(2), Rat(1)});
    RepresentResult r2 = represent(L2, eps);
    CHECK(r2.status == RepresentResult::Status::Exhausted);
    CHECK(!box_search_represents(L2, eps));

    // completeness cross-check against the box oracle over Q(sqrt2)
    auto K2 = NumberField::create(ZPoly({-2, 0, 1}));
    auto L22 = identity_lattice(K2, 2);
    SplitMix64 rng(99);
    int compared = 0;
    for (int trial = 0; trial < 40; ++trial) {
        FieldElement alpha(K2, {Rat(rng.range(0, 9)), Rat(rng.range(-3, 3))});
        if (alpha.is_zero() || !is_totally_positive(alpha)) continue;
        if (trace(alpha) > 30) continue;
        RepresentResult rr = represent(L22, alpha);
        REQUIRE(rr.status != RepresentResult::Status::BudgetExceeded);
        bool oracle = box_search_represents(L22, alpha);
        CHECK((rr.status == RepresentResult::Status::Found) == oracle);
        ++compared;
    }
    CHECK(compared > 10);

    // scaling invariance: witnesses transfer between L and the u-rescaled L
    UnitClassReport rep3 = tp_unit_square_classes(3);
    FieldElement u = rep3.fundamental_unit; // 2+sqrt3, totally positive
    for (const FieldElement& alpha :
         {FieldElement::one(K3), FieldElement(K3, {Rat(3), Rat(1)}), eps}) {
        if (!is_totally_positive(alpha)) continue;
        std::vector<std::vector<FieldElement>> scaled_gram = L2.gram();
        for (auto& row : scaled_gram)
            for (auto& e : row) e = e * u;
        QuadraticLattice Lu(K3, scaled_gram);
        RepresentResult a = represent(L2, alpha);
        RepresentResult b = represent(Lu, alpha * u);
        CHECK(a.status == b.status);
        if (a.status == RepresentResult::Status::Found) CHECK(a.witness == b.witness);
    }
}

TEST_CASE("orthogonal sublattices") {
    auto Q = NumberField::rationals();
    auto cube = identity_lattice(Q, 3);
    auto sub = orthogonal_sublattice(cube, {Int(1), Int(0), Int(0)});
    REQUIRE(sub.zbasis().has_value());
    CHECK(sub.zbasis()->size() == 2);
    CHECK(sub.rank_over_field() == 2);
    // Q restricted to the sublattice is y^2 + z^2
    ZRestriction r = restrict_scalars(sub);
    CHECK(r.trace_gram == QMat{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});

    auto hex = lattice_create(Q, rational_gram(Q, {{Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1)}}));
    auto hsub = orthogonal_sublattice(hex, {Int(1), Int(0)});
    REQUIRE(hsub.zbasis().has_value());
    REQUIRE(hsub.zbasis()->size() == 1);
    CHECK((*hsub.zbasis())[0] == std::vector<Int>{Int(1), Int(-2)});
    // Q(1, -2) = 1 - 2 + 4 = 3
    auto v = restrict_scalars(hsub).to_field({Int(1)});
    CHECK(hsub.quadratic_value(v) == FieldElement::from_rational(Q, Rat(3)));
    // representation decisions work on the submodule directly
    RepresentResult rsub = represent(hsub, FieldElement::from_rational(Q, Rat(12)));
    REQUIRE(rsub.status == RepresentResult::Status::Found); // 3 * (+-2)^2
    CHECK(rsub.witness == std::vector<Int>{Int(2)});
    CHECK(represent(hsub, FieldElement::from_rational(Q, Rat(5))).status ==
          RepresentResult::Status::Exhausted);
    // iterated orthogonal complements keep dropping the rank
    auto cube_sub = orthogonal_sublattice(cube, {Int(1), Int(1), Int(1)});
    CHECK(cube_sub.rank_over_field() == 2);
    auto cube_sub2 = orthogonal_sublattice(cube_sub, {Int(1), Int(0)});
    CHECK(cube_sub2.rank_over_field() <= 1);

    // bilinear form vanishes against every basis vector of the complement
    auto K2 = NumberField::create(ZPoly({-2, 0, 1}));
    auto L = identity_lattice(K2, 2);
    std::vector<Int> w{Int(1), Int(1), Int(0), Int(1)};
    auto sub2 = orthogonal_sublattice(L, w);
    ZRestriction amb = restrict_scalars(L);
    auto wf = amb.to_field(w);
    for (const auto& row : *sub2.zbasis()) {
        auto rf = amb.to_field(row);
        CHECK(L.bilinear(wf, rf).is_zero());
    }
    CHECK(sub2.rank_over_field() <= 1);

    CHECK_THROWS_AS(orthogonal_sublattice(cube, {Int(0), Int(0), Int(0)}), zero_vector_error);
}

TEST_CASE("represented unit classes and the rank bound") {
    auto K3 = NumberField::create(ZPoly({-3, 0, 1}));
    UnitClassReport rep = tp_unit_square_classes(3);

    // diag(1, 2+sqrt3) represents both classes
    FieldElement eps = rep.fundamental_unit;
    QuadraticLattice L(K3, {{FieldElement::one(K3), FieldElement::zero(K3)},
                            {FieldElement::zero(K3), eps}});
    SquareClassCoverage cov = represented_unit_classes(L, rep);
    CHECK(cov.represented.size() == 2);
    CHECK(cov.bound_2n_minus_2 == 2);

    // X^2+Y^2 represents only the class of 1
    auto L2 = identity_lattice(K3, 2);
    SquareClassCoverage cov2 = represented_unit_classes(L2, rep);
    CHECK(cov2.represented == std::vector<std::size_t>{0});

    // gamma condition for Q(sqrt3): gamma = 2 and 2(2+sqrt3) = (1+sqrt3)^2,
    // so the n bound is NOT applicable
    CHECK(!cov.bound_n_applicable);

    // over Q(sqrt5) only one class exists
    UnitClassReport rep5 = tp_unit_square_classes(5);
    auto K5 = rep5.representatives[0].field();
    SquareClassCoverage cov5 = represented_unit_classes(identity_lattice(K5, 2), rep5);
    CHECK(cov5.represented.size() <= 1);

    // D = 33: 2 is unramified (33 = 1 mod 8), class_count 2, gamma condition holds
    UnitClassReport rep33 = tp_unit_square_classes(33);
    CHECK(rep33.class_count == 2);
    auto K33 = rep33.representatives[0].field();
    SquareClassCoverage cov33 = represented_unit_classes(identity_lattice(K33, 2), rep33);
    CHECK(cov33.bound_n_applicable);

    // rank-1 lattices represent at most one class
    SquareClassCoverage cov1 = represented_unit_classes(identity_lattice(K3, 1), rep);
    CHECK(cov1.represented.size() <= 1);
    CHECK(cov1.bound_2n_minus_2 == 1);
}

TEST_CASE("question 4.2 harness stays quiet at rank 1 and 2") {
    UnitClassReport rep = tp_unit_square_classes(3);
    Question42Result r1 = question42_search(rep, 1, 3, 200000, 40);
    CHECK(r1.hits.empty());
    CHECK(r1.examined > 0);
    CHECK(r1.max_coverage <= 1);
    Question42Result r2 = question42_search(rep, 2, 2, 200000, 25);
    CHECK(r2.hits.empty());
    CHECK(r2.max_coverage <= 2);
}

TEST_CASE("bound battery smoke run") {
    BatteryResult r = run_bound_battery(3, 2, 10, 12345, 6);
    CHECK(r.violations == 0);
    CHECK(r.max_represented <= 2);
    long total = 0;
    for (long c : r.histogram) total += c;
    CHECK(total == 10);
    // determinism
    BatteryResult r2 = run_bound_battery(3, 2, 10, 12345, 6);
    CHECK(r2.histogram == r.histogram);
    CHECK(r2.max_represented == r.max_represented);
}
