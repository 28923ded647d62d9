#pragma once

#include <algorithm>
#include <vector>

#include "totreal/cyclo.hpp"
#include "totreal/numberfield.hpp"

namespace totreal {

/// Strictly increasing primes q = 3 (mod 4) with pairwise
/// gcd(q_i - 1, q_j - 1) = 2, starting at 7.
struct PrimeSequence {
    std::vector<Int> primes;
};

inline void validate_prime_sequence(const PrimeSequence& seq) {
    if (seq.primes.empty() || seq.primes.front() != 7)
        throw invalid_sequence_error("sequence must start at 7");
    for (std::size_t i = 0; i < seq.primes.size(); ++i) {
        const Int& q = seq.primes[i];
        if (!is_prime(q) || q % 4 != 3) throw invalid_sequence_error(to_string(q));
        if (i > 0 && seq.primes[i] <= seq.primes[i - 1])
            throw invalid_sequence_error("not increasing");
        for (std::size_t j = 0; j < i; ++j)
            if (gcd(seq.primes[i] - 1, seq.primes[j] - 1) != 2)
                throw invalid_sequence_error("gcd(q_i - 1, q_j - 1) != 2");
    }
}

/**
 * The smallest prime q > max(seq) with q = 3 (mod 4) and q = 2 (mod p) for
 * every odd prime p dividing prod(q_i - 1): solve the congruences by CRT
 * and scan the progression for the first prime.
 */
inline Int extend_prime_sequence(const PrimeSequence& seq) {
    validate_prime_sequence(seq);
    std::vector<Int> odd_primes;
    for (const Int& q : seq.primes)
        for (const auto& [p, e] : factorize(q - 1)) {
            (void)e;
            if (p == 2) continue;
            if (std::find(odd_primes.begin(), odd_primes.end(), p) == odd_primes.end())
                odd_primes.push_back(p);
        }
    std::vector<std::pair<Int, Int>> congruences{{Int(3), Int(4)}};
    Int modulus = 4;
    for (const Int& p : odd_primes) {
        congruences.emplace_back(Int(2), p);
        modulus *= p;
    }
    Int x = crt(congruences);
    const Int& top = seq.primes.back();
    while (x <= top) x += modulus;
    // primality is decided deterministically below 2^64; the sequence is
    // capped there
    Int cap = Int(1) << 63;
    while (!is_prime(x)) {
        x += modulus;
        if (x > cap) throw out_of_range_error("prime sequence exceeds the 64-bit testing range");
    }
    return x;
}

inline PrimeSequence prime_sequence(std::size_t count) {
    PrimeSequence seq;
    if (count == 0) return seq;
    seq.primes.push_back(7);
    while (seq.primes.size() < count) seq.primes.push_back(extend_prime_sequence(seq));
    return seq;
}

/// n = 1 (mod 12), n <= limit, with n(n+1), 3n(3n+4), (3n+3)(3n+4) all
/// squarefree (full factorization by trial division).
inline std::vector<long> squarefree_triple_scan(long limit) {
    if (limit < 1) throw out_of_range_error("limit must be at least 1");
    std::vector<long> out;
    for (long n = 1; n <= limit; n += 12) {
        Int a = Int(n) * (n + 1);
        Int b = Int(3) * n * (3 * n + 4);
        Int c = Int(3 * n + 3) * (3 * n + 4);
        if (is_squarefree(a) && is_squarefree(b) && is_squarefree(c)) out.push_back(n);
    }
    return out;
}

/**
 * One stage of the compositum tower over the multiquadratic base field:
 * generators are the minimal polynomials of g(1/q_j) for j <= i, with
 * relative degree prod (q_j - 1)/2 over the base.  The base field itself is
 * infinite; only a finite approximation parameter (squarefree d below the
 * bound) is carried.  Generator polynomials whose degree exceeds
 * `degree_cap` are left unmaterialized (their degree is always reported).
 */
struct TowerStage {
    long index = 0;
    std::vector<ZPoly> generators;        // materialized minimal polynomials
    std::vector<Int> generator_degrees;   // (q_j - 1)/2 for all j <= index
    std::vector<long> base_approximation; // squarefree d <= bound
    Int relative_degree = 1;
};

inline TowerStage tower_stage(long i, const PrimeSequence& seq, long base_bound,
                              long degree_cap = 512) {
    if (i < 0 || i > static_cast<long>(seq.primes.size())) throw index_out_of_range_error();
    if (base_bound < 2) throw out_of_range_error("base_bound must be at least 2");
    TowerStage stage;
    stage.index = i;
    for (long j = 0; j < i; ++j) {
        const Int& q = seq.primes[static_cast<std::size_t>(j)];
        Int deg = (q - 1) / 2;
        stage.generator_degrees.push_back(deg);
        stage.relative_degree *= deg;
        if (deg <= degree_cap && q.fits_slong_p())
            stage.generators.push_back(cos_minpoly(static_cast<unsigned long>(q.get_ui())));
    }
    // degrees pairwise coprime (consequence of the gcd condition on the seq)
    for (std::size_t a = 0; a < stage.generator_degrees.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (gcd(stage.generator_degrees[a], stage.generator_degrees[b]) != 1)
                throw invalid_sequence_error("generator degrees not coprime");
    for (long d = 2; d <= base_bound; ++d)
        if (is_squarefree(Int(d))) stage.base_approximation.push_back(d);
    return stage;
}

/**
 * The elements g(1/q_j), j <= count, each certified to have house
 * strictly below 2 by rational cosine enclosures: every conjugate of
 * g(s/q) is 2cos(2 pi k / q), and the largest modulus among them is
 * 2cos(pi/q) < 2.  The minimal polynomial is never materialized, so the
 * certification scales to the large primes later in the sequence.
 */
inline std::vector<GExpr> house_lt2_witnesses(long count, const PrimeSequence& seq) {
    if (count < 0 || count > static_cast<long>(seq.primes.size()))
        throw index_out_of_range_error();
    std::vector<GExpr> out;
    for (long j = 0; j < count; ++j) {
        const Int& q = seq.primes[static_cast<std::size_t>(j)];
        if (!q.fits_slong_p()) throw out_of_range_error("prime too large");
        long qq = q.get_si();
        GExpr g(1, qq);
        // house(g(1/q)) = |2cos(2 pi k*/q)| for k* = (q-1)/2 (angle nearest
        // pi); the margin shrinks like (pi/q)^2, so escalate the precision
        bool certified = false;
        for (unsigned bits = 64; bits <= (1u << 14); bits *= 2) {
            RatInterval extreme = two_cos_two_pi((qq - 1) / 2, qq, bits);
            RatInterval first = two_cos_two_pi(1, qq, bits);
            if (extreme.lo > Rat(-2) && extreme.hi < Rat(2) && first.hi < Rat(2) &&
                first.lo > Rat(-2)) {
                certified = true;
                break;
            }
        }
        if (!certified) throw error("InternalError", "house certification failed");
        out.push_back(g);
    }
    // pairwise distinct: the minimal polynomial degrees (q-1)/2 differ
    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (out[a].degree() == out[b].degree())
                throw error("InternalError", "witnesses not distinct");
    return out;
}

/// Certified comparison house(g(s/n)) vs r via cosine enclosures: the
/// conjugates are 2cos(2 pi k/n) over k coprime to n, so the house is
/// attained at the coprime k with angle closest to pi.
inline Ordering3 house_compare(const GExpr& g, const Rat& r) {
    long n = g.n();
    if (n == 1 || n == 2) { // values +-2
        if (r == 2) return Ordering3::EQ;
        return r > 2 ? Ordering3::LT : Ordering3::GT;
    }
    if (n == 4) { // value 0
        if (r == 0) return Ordering3::EQ;
        return r > 0 ? Ordering3::LT : Ordering3::GT;
    }
    // find the coprime k <= n/2 maximizing |2cos(2 pi k / n)|: candidates are
    // the smallest coprime (cos near +2) and the largest coprime <= n/2
    // (cos near -2)
    long k_small = 1;
    long k_large = n / 2;
    while (std::gcd(k_large, n) != 1) --k_large;
    auto abs_interval = [](const RatInterval& c) {
        if (c.contains_zero()) return RatInterval(Rat(0), c.max_abs());
        Rat a = abs(c.lo), b = abs(c.hi);
        return RatInterval(std::min(a, b), std::max(a, b));
    };
    for (unsigned bits = 48;; bits *= 2) {
        RatInterval a1 = abs_interval(two_cos_two_pi(k_small, n, bits));
        RatInterval a2 = abs_interval(two_cos_two_pi(k_large, n, bits));
        RatInterval house(std::max(a1.lo, a2.lo), std::max(a1.hi, a2.hi));
        if (house.lo > r) return Ordering3::GT;
        if (house.hi < r) return Ordering3::LT;
        if (bits > 1u << 16) {
            // possible exact tie: fall back to the symbolic comparison
            return house_compare_minpoly(g.minpoly(), r);
        }
    }
}

/// Basic open set H(A, B) of the constructible topology: fields containing
/// every element of A and avoiding every element of B.
struct BasicOpen {
    std::vector<AlgebraicReal> require;  // A
    std::vector<AlgebraicReal> exclude;  // B

    /// A and B intersecting makes the set empty.
    bool is_vacuous() const {
        for (const auto& a : require)
            for (const auto& b : exclude)
                if (equal(a, b)) return true;
        return false;
    }
};

inline bool basic_open_membership(const FieldPtr& K, const BasicOpen& open_set) {
    for (const auto& x : open_set.require)
        if (count_real_roots(x.minpoly()) != static_cast<int>(x.minpoly().degree()))
            throw not_totally_real_error(x.minpoly().str());
    for (const auto& x : open_set.exclude)
        if (count_real_roots(x.minpoly()) != static_cast<int>(x.minpoly().degree()))
            throw not_totally_real_error(x.minpoly().str());
    if (open_set.is_vacuous()) return false;
    for (const auto& a : open_set.require)
        if (!contains(K, a)) return false;
    for (const auto& b : open_set.exclude)
        if (contains(K, b)) return false;
    return true;
}

} // namespace totreal
