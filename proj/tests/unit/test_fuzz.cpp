#include <doctest.h>

#include "../common/oracles.hpp"
#include "helpers.hpp"
#include "totreal/cyclo.hpp"
#include "totreal/modpoly.hpp"
#include "totreal/qlattice.hpp"

using namespace totreal;
using totreal::testing::pinned_value;

// Deterministic randomized sweeps over the certified decision procedures.

TEST_CASE("fuzz: square roots are found exactly when they exist") {
    std::vector<FieldPtr> fields = {
        NumberField::rationals(),
        NumberField::create(ZPoly({-2, 0, 1})),
        NumberField::create(ZPoly({-1, -1, 1})),
        NumberField::create_trusted(cos_minpoly(7)),   // degree 3
        NumberField::create_trusted(cos_minpoly(16)),  // degree 4
    };
    SplitMix64 rng(0xF00D);
    for (const auto& K : fields) {
        long d = K->degree();
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Rat> c(static_cast<std::size_t>(d));
            for (auto& v : c) v = Rat(rng.range(-4, 4), rng.range(1, 2));
            FieldElement y(K, std::move(c));
            if (y.is_zero()) continue;
            FieldElement sq = y * y;
            auto r = sqrt_in_field(sq);
            REQUIRE(r.has_value());
            CHECK((*r == y || *r == -y));
            CHECK(*r * *r == sq);
        }
        // non-squares: rational primes that stay prime-ish in the field
        for (long p : {7L, 11L, 13L}) {
            FieldElement cand = FieldElement::from_rational(K, Rat(p));
            auto r = sqrt_in_field(cand);
            if (r) CHECK(*r * *r == cand); // exactness, never a false witness
        }
    }
}

TEST_CASE("fuzz: membership reconstruction inverts the pinned value") {
    std::vector<FieldPtr> fields = {
        NumberField::create(ZPoly({-3, 0, 1})),
        NumberField::create_trusted(cos_minpoly(7)),
        NumberField::create_trusted(cos_minpoly(16)),
    };
    SplitMix64 rng(0xBEEF);
    for (const auto& K : fields) {
        long d = K->degree();
        int done = 0;
        while (done < 15) {
            std::vector<Rat> c(static_cast<std::size_t>(d));
            for (auto& v : c) v = Rat(rng.range(-3, 3));
            FieldElement y(K, std::move(c));
            if (y.is_zero() || y.is_rational()) continue;
            auto back = contains(K, pinned_value(y));
            REQUIRE(back.has_value());
            // same minimal polynomial and same pinned real
            CHECK(minpoly_of(*back) == minpoly_of(y));
            CHECK(equal(pinned_value(*back), pinned_value(y)));
            ++done;
        }
    }
    // cross-field negatives
    auto K3 = fields[0];
    CHECK(!contains(K3, real_roots_of_irreducible(ZPoly({-2, 0, 1}))[1]).has_value());
    CHECK(!contains(K3, real_roots_of_irreducible(ZPoly({-5, 0, 1}))[1]).has_value());
}

TEST_CASE("fuzz: enumeration agrees with the box oracle on random lattices") {
    auto K3 = NumberField::create(ZPoly({-3, 0, 1}));
    SplitMix64 rng(0xD1CE);
    int lattices = 0;
    while (lattices < 6) {
        // random small gram, rank 2, half-integral off-diagonal
        FieldElement d1(K3, {Rat(rng.range(1, 3)), Rat(rng.range(-1, 1))});
        FieldElement d2(K3, {Rat(rng.range(1, 3)), Rat(rng.range(-1, 1))});
        FieldElement off(K3, {Rat(rng.range(-2, 2), 2), Rat(rng.range(-1, 1), 2)});
        if (!is_totally_positive(d1) || !is_totally_positive(d2)) continue;
        QuadraticLattice L(K3, {{d1, off}, {off, d2}});
        if (!is_positive_definite(L)) continue;
        ++lattices;
        for (int t = 0; t < 6; ++t) {
            FieldElement alpha(K3, {Rat(rng.range(0, 8)), Rat(rng.range(-2, 2))});
            if (alpha.is_zero() || !is_totally_positive(alpha)) continue;
            if (trace(alpha) > 24) continue;
            RepresentResult r = represent(L, alpha, 4000000);
            REQUIRE(r.status != RepresentResult::Status::BudgetExceeded);
            bool oracle = totreal::testing::box_search_represents(L, alpha);
            CHECK((r.status == RepresentResult::Status::Found) == oracle);
            if (r.status == RepresentResult::Status::Found)
                CHECK(L.quadratic_value(r.field_witness) == alpha);
        }
    }
}

TEST_CASE("fuzz: integer kernels are sound and complete") {
    SplitMix64 rng(0xCAFE);
    for (int trial = 0; trial < 25; ++trial) {
        long rows = 1 + static_cast<long>(rng.below(3));
        long cols = rows + 1 + static_cast<long>(rng.below(3));
        ZMat a(static_cast<std::size_t>(rows), std::vector<Int>(static_cast<std::size_t>(cols)));
        for (auto& row : a)
            for (auto& v : row) v = rng.range(-6, 6);
        ZMat kernel = detail::integer_kernel(a, cols);
        // soundness
        for (const auto& y : kernel)
            for (long r = 0; r < rows; ++r) {
                Int acc = 0;
                for (long c = 0; c < cols; ++c)
                    acc += a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                           y[static_cast<std::size_t>(c)];
                CHECK(acc == 0);
            }
        // completeness: rank(A) + dim(kernel) = cols (rational rank by Gauss)
        std::vector<std::vector<Rat>> m;
        for (const auto& row : a) {
            std::vector<Rat> r;
            for (const auto& v : row) r.emplace_back(v);
            m.push_back(std::move(r));
        }
        long rank = 0;
        for (long col = 0; col < cols && rank < rows; ++col) {
            long piv = -1;
            for (long r = rank; r < rows; ++r)
                if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(rank)]);
            for (long r = rank + 1; r < rows; ++r) {
                Rat f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                        m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
                for (long c = col; c < cols; ++c)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                        f * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
            }
            ++rank;
        }
        CHECK(rank + static_cast<long>(kernel.size()) == cols);
    }
}

TEST_CASE("fuzz: irreducibility against constructed factorizations") {
    SplitMix64 rng(0x5EED);
    std::vector<ZPoly> irreducibles = {
        ZPoly({-2, 0, 1}), ZPoly({-3, 0, 1}), ZPoly({-1, -1, 1}), ZPoly({1, 1}),
        ZPoly({-1, 3}),    cos_minpoly(7),    cos_minpoly(16),    ZPoly({1, 0, 1}),
    };
    for (int trial = 0; trial < 30; ++trial) {
        const ZPoly& a = irreducibles[rng.below(irreducibles.size())];
        const ZPoly& b = irreducibles[rng.below(irreducibles.size())];
        ZPoly prod = a * b;
        CHECK(!is_irreducible_over_Q(prod));
    }
    for (const auto& f : irreducibles) CHECK(is_irreducible_over_Q(f));
    // minimal polynomials of random elements are irreducible by construction
    auto K7 = NumberField::create_trusted(cos_minpoly(7));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rat> c(3);
        for (auto& v : c) v = Rat(rng.range(-5, 5));
        FieldElement x(K7, std::move(c));
        if (x.is_zero()) continue;
        CHECK(is_irreducible_over_Q(minpoly_of(x)));
    }
}
