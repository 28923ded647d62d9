#include <doctest.h>

#include "totreal/constructions.hpp"

using namespace totreal;

TEST_CASE("prime sequence extension") {
    PrimeSequence seq;
    seq.primes = {7};
    CHECK(extend_prime_sequence(seq) == 11); // x = 3 mod 4, 2 mod 3 -> 11 mod 12
    seq.primes = {7, 11};
    CHECK(extend_prime_sequence(seq) == 47); // add 2 mod 5 -> 47 mod 60
    CHECK(gcd(Int(10), Int(46)) == 2);
    CHECK(gcd(Int(6), Int(46)) == 2);

    // determinism / idempotence
    CHECK(extend_prime_sequence(seq) == 47);

    PrimeSequence six = prime_sequence(6);
    REQUIRE(six.primes.size() == 6);
    CHECK(six.primes[0] == 7);
    CHECK(six.primes[1] == 11);
    CHECK(six.primes[2] == 47);
    validate_prime_sequence(six);
    for (const auto& q : six.primes) {
        CHECK(is_prime(q));
        CHECK(q % 4 == 3);
    }

    PrimeSequence bad;
    bad.primes = {11};
    CHECK_THROWS_AS(extend_prime_sequence(bad), invalid_sequence_error);
}

TEST_CASE("squarefree triple scan") {
    auto list = squarefree_triple_scan(100);
    // n = 1: products 2, 21, 42 squarefree
    CHECK(std::find(list.begin(), list.end(), 1L) != list.end());
    // n = 13: 182 = 2*7*13, 1677 = 3*13*43, 1806 = 2*3*7*43
    CHECK(std::find(list.begin(), list.end(), 13L) != list.end());
    // n = 25: 25*26 = 650 = 2 * 5^2 * 13 fails
    CHECK(std::find(list.begin(), list.end(), 25L) == list.end());
    for (long n : list) {
        CHECK(n % 12 == 1);
        // independent p^2-divisibility oracle
        for (Int m : std::vector<Int>{Int(Int(n) * (n + 1)), Int(Int(3) * n * (3 * n + 4)), Int(Int(3 * n + 3) * (3 * n + 4))}) {
            bool clean = true;
            for (Int p = 2; p * p <= m; p += 1)
                if (m % (p * p) == 0) clean = false;
            CHECK(clean);
        }
    }
}

TEST_CASE("tower stages") {
    PrimeSequence seq = prime_sequence(2);
    TowerStage s0 = tower_stage(0, seq, 10);
    CHECK(s0.generators.empty());
    CHECK(s0.relative_degree == 1);
    CHECK(s0.base_approximation ==
          std::vector<long>{2, 3, 5, 6, 7, 10}); // squarefree up to 10

    TowerStage s1 = tower_stage(1, seq, 10);
    REQUIRE(s1.generators.size() == 1);
    CHECK(s1.generators[0] == ZPoly({-1, -2, 1, 1})); // minpoly of g(1/7)
    CHECK(s1.relative_degree == 3);

    TowerStage s2 = tower_stage(2, seq, 10);
    CHECK(s2.relative_degree == 15); // 3 * 5
    CHECK(s2.generator_degrees == std::vector<Int>{Int(3), Int(5)});

    CHECK_THROWS_AS(tower_stage(3, seq, 10), index_out_of_range_error);
}

TEST_CASE("house witnesses below 2") {
    PrimeSequence seq = prime_sequence(3);
    auto witnesses = house_lt2_witnesses(3, seq);
    REQUIRE(witnesses.size() == 3);
    CHECK(witnesses[0].degree() == 3);
    CHECK(witnesses[1].degree() == 5);
    CHECK(witnesses[2].degree() == 23);
    for (const auto& w : witnesses) CHECK(house_compare(w, Rat(2)) == Ordering3::LT);
    CHECK(house_lt2_witnesses(0, seq).empty());

    // the GExpr house comparison agrees with the symbolic one on small orders
    CHECK(house_compare(GExpr(1, 7), Rat(2)) == Ordering3::LT);
    CHECK(house_compare(GExpr(0, 1), Rat(2)) == Ordering3::EQ);  // g(0) = 2
    CHECK(house_compare(GExpr(1, 2), Rat(1)) == Ordering3::GT);  // |-2| = 2 > 1
    CHECK(house_compare(GExpr(1, 12), Rat(2)) == Ordering3::LT); // sqrt3
}

TEST_CASE("basic open membership") {
    auto K2 = NumberField::create(ZPoly({-2, 0, 1}));
    AlgebraicReal sqrt2 = real_roots_of_irreducible(ZPoly({-2, 0, 1}))[1];
    AlgebraicReal sqrt3 = real_roots_of_irreducible(ZPoly({-3, 0, 1}))[1];

    BasicOpen h1{{sqrt2}, {sqrt3}};
    CHECK(basic_open_membership(K2, h1));
    BasicOpen h2{{sqrt3}, {}};
    CHECK(!basic_open_membership(K2, h2));
    BasicOpen h3{{}, {}};
    CHECK(basic_open_membership(K2, h3));
    CHECK(basic_open_membership(NumberField::rationals(), h3));

    // antitone in A: growing A can only lose membership
    BasicOpen h4{{sqrt2, sqrt3}, {}};
    CHECK(!basic_open_membership(K2, h4));
    // monotone in removing elements of B
    BasicOpen h5{{sqrt2}, {}};
    CHECK(basic_open_membership(K2, h5));

    // vacuous set: A and B intersect
    BasicOpen hv{{sqrt2}, {sqrt2}};
    CHECK(hv.is_vacuous());
    CHECK(!basic_open_membership(K2, hv));

    // complex-conjugate inputs are rejected
    BasicOpen hc{{AlgebraicReal(ZPoly({-1, -1, 0, 1}),
                                RatInterval(Rat(1), Rat(2)))},
                 {}};
    CHECK_THROWS_AS(basic_open_membership(K2, hc), not_totally_real_error);
}
