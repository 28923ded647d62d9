#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "totreal/integer.hpp"
#include "totreal/poly.hpp"

namespace totreal {

/// Dense polynomial over F_p (p an odd machine prime), monic-friendly ops.
class PolyFp {
public:
    PolyFp() : p_(3) {}
    PolyFp(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) { trim(); }

    static PolyFp from_zpoly(const ZPoly& f, std::uint64_t p) {
        std::vector<std::uint64_t> c(f.coeffs().size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            Int m = f.coeffs()[i] % Int(p);
            if (m < 0) m += p;
            c[i] = m.get_ui();
        }
        return PolyFp(p, std::move(c));
    }

    std::uint64_t p() const { return p_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t leading() const { return c_.back(); }

    std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    }

    std::uint64_t inv(std::uint64_t a) const {
        // Fermat
        std::uint64_t r = 1, base = a % p_, e = p_ - 2;
        while (e) {
            if (e & 1) r = mulmod(r, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        return r;
    }

    PolyFp operator+(const PolyFp& o) const {
        std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = (r[i] + o.c_[i]) % p_;
        return PolyFp(p_, std::move(r));
    }

    PolyFp operator-(const PolyFp& o) const {
        std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = (r[i] + p_ - o.c_[i]) % p_;
        return PolyFp(p_, std::move(r));
    }

    PolyFp operator*(const PolyFp& o) const {
        if (is_zero() || o.is_zero()) return PolyFp(p_, {});
        std::vector<std::uint64_t> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = (r[i + j] + static_cast<unsigned __int128>(c_[i]) * o.c_[j]) % p_;
        }
        return PolyFp(p_, std::move(r));
    }

    PolyFp monic() const {
        if (is_zero() || leading() == 1) return *this;
        std::uint64_t s = inv(leading());
        std::vector<std::uint64_t> r(c_);
        for (auto& v : r) v = mulmod(v, s);
        return PolyFp(p_, std::move(r));
    }

    static std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
        long db = b.degree();
        std::vector<std::uint64_t> r(a.c_);
        long dr = a.degree();
        std::vector<std::uint64_t> q(dr >= db ? static_cast<std::size_t>(dr - db + 1) : 0, 0);
        std::uint64_t linv = b.inv(b.leading());
        while (dr >= db) {
            std::uint64_t coef = b.mulmod(r[static_cast<std::size_t>(dr)], linv);
            q[static_cast<std::size_t>(dr - db)] = coef;
            for (long j = 0; j <= db; ++j) {
                auto& slot = r[static_cast<std::size_t>(dr - db + j)];
                slot = (slot + b.p_ - b.mulmod(coef, b.c_[static_cast<std::size_t>(j)])) % b.p_;
            }
            while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) --dr;
        }
        r.resize(static_cast<std::size_t>(dr + 1));
        return {PolyFp(b.p_, std::move(q)), PolyFp(b.p_, std::move(r))};
    }

    PolyFp mod(const PolyFp& m) const { return divmod(*this, m).second; }

    static PolyFp gcd(PolyFp a, PolyFp b) {
        while (!b.is_zero()) {
            PolyFp r = divmod(a, b).second;
            a = b;
            b = r;
        }
        return a.monic();
    }

    PolyFp derivative() const {
        if (c_.size() <= 1) return PolyFp(p_, {});
        std::vector<std::uint64_t> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mulmod(c_[i], i % p_);
        return PolyFp(p_, std::move(r));
    }

    /// this^e mod m, with arbitrary-precision exponent.
    PolyFp powmod(const Int& e, const PolyFp& m) const {
        PolyFp base = this->mod(m);
        PolyFp result(p_, {1});
        for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
            result = (result * result).mod(m);
            if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
                result = (result * *this).mod(m);
        }
        return result;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
};

/// Full factorization of a squarefree monic polynomial over F_p (p odd):
/// distinct-degree splitting followed by Cantor-Zassenhaus equal-degree
/// splitting with a deterministic seeded generator.
inline std::vector<PolyFp> factor_mod_p_squarefree(const PolyFp& f0) {
    std::uint64_t p = f0.p();
    PolyFp f = f0.monic();
    std::vector<PolyFp> out;
    std::vector<std::pair<PolyFp, long>> blocks; // (product of irreducibles of degree d, d)
    PolyFp x(p, {0, 1});
    PolyFp h = x;
    PolyFp rest = f;
    for (long d = 1; rest.degree() > 0 && 2 * d <= rest.degree() + 0; ++d) {
        h = h.powmod(Int(p), rest);
        PolyFp g = PolyFp::gcd(h - x, rest);
        if (g.degree() > 0) {
            blocks.emplace_back(g, d);
            rest = PolyFp::divmod(rest, g).first;
            h = h.mod(rest);
        }
    }
    if (rest.degree() > 0) blocks.emplace_back(rest, rest.degree());

    SplitMix64 rng(0x5eedf00dULL);
    for (auto& [block, d] : blocks) {
        std::vector<PolyFp> work{block};
        while (!work.empty()) {
            PolyFp g = work.back();
            work.pop_back();
            if (g.degree() == d) {
                out.push_back(g.monic());
                continue;
            }
            // random split: gcd(r^((p^d-1)/2) - 1, g)
            Int exp = 1;
            for (long i = 0; i < d; ++i) exp *= p;
            exp = (exp - 1) / 2;
            PolyFp split;
            while (true) {
                std::vector<std::uint64_t> rc(static_cast<std::size_t>(g.degree()), 0);
                for (auto& v : rc) v = rng.next() % p;
                PolyFp r(p, std::move(rc));
                if (r.is_zero()) continue;
                PolyFp b = r.powmod(exp, g) - PolyFp(p, {1});
                PolyFp cand = PolyFp::gcd(b, g);
                if (cand.degree() > 0 && cand.degree() < g.degree()) {
                    split = cand;
                    break;
                }
            }
            work.push_back(split);
            work.push_back(PolyFp::divmod(g, split).first);
        }
    }
    std::sort(out.begin(), out.end(), [](const PolyFp& a, const PolyFp& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

namespace detail {

/// Coefficients reduced into the balanced range (-m/2, m/2].
inline ZPoly balance_mod(const ZPoly& f, const Int& m) {
    std::vector<Int> c(f.coeffs());
    Int half = m / 2;
    for (auto& v : c) {
        v %= m;
        if (v < 0) v += m;
        if (v > half) v -= m;
    }
    return ZPoly(std::move(c));
}

inline ZPoly zpoly_from_fp(const PolyFp& f) {
    std::vector<Int> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Int(f.coeffs()[i]);
    return ZPoly(std::move(c));
}

inline ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Int& m) {
    ZPoly prod = a * b;
    std::vector<Int> c(prod.coeffs());
    for (auto& v : c) {
        v %= m;
        if (v < 0) v += m;
    }
    return ZPoly(std::move(c));
}

/// Landau-Mignotte style bound on the sup-norm of any monic factor of f,
/// scaled by |lc(f)|: generous and safe.
inline Int factor_coeff_bound(const ZPoly& f) {
    Int norm2_sq = 0;
    for (const auto& c : f.coeffs()) norm2_sq += c * c;
    Int norm2 = isqrt(norm2_sq) + 1;
    Int bound = norm2 + abs(f.leading());
    long n = f.degree();
    for (long i = 0; i < n + 1; ++i) bound *= 2;
    return bound;
}

} // namespace detail

/**
 * Linear multifactor Hensel lifting.  Input: primitive f with p not dividing
 * lc(f), and the monic factorization of f/lc mod p.  Output: monic lifts
 * g_i mod p^K with f = lc(f) * prod g_i (mod p^K), p^K >= target.
 */
inline std::pair<std::vector<ZPoly>, Int> hensel_lift(const ZPoly& f,
                                                      const std::vector<PolyFp>& factors_p,
                                                      std::uint64_t p,
                                                      const Int& target) {
    const std::size_t r = factors_p.size();
    // Bezout data mod p: h_i * prod_{j != i} g_j = 1 (mod g_i)
    std::vector<PolyFp> cofactor_inv(r);
    for (std::size_t i = 0; i < r; ++i) {
        PolyFp prod(p, {1});
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) prod = (prod * factors_p[j]).mod(factors_p[i]);
        // invert prod in F_p[x]/(g_i) via extended Euclid (use powmod trick:
        // the quotient ring is a field iff g_i irreducible -- which it is)
        // extended Euclid:
        PolyFp a = factors_p[i], b = prod;
        PolyFp s0(p, {1}), s1(p, {});
        PolyFp t0(p, {}), t1(p, {1});
        while (!b.is_zero()) {
            auto [q, rem] = PolyFp::divmod(a, b);
            PolyFp ns = s0 - (q * s1).mod(factors_p[i]);
            PolyFp nt = t0 - (q * t1).mod(factors_p[i]);
            a = b; b = rem;
            s0 = s1; s1 = ns;
            t0 = t1; t1 = nt;
        }
        // a = gcd = constant; t0 is the inverse of prod up to that constant
        std::uint64_t c = a.leading();
        PolyFp inv_c(p, {a.inv(c)});
        cofactor_inv[i] = (t0 * inv_c).mod(factors_p[i]);
    }

    Int pk(p);
    std::vector<ZPoly> lifted(r);
    for (std::size_t i = 0; i < r; ++i) lifted[i] = detail::zpoly_from_fp(factors_p[i]);

    while (pk < target) {
        Int pk1 = pk * Int(p);
        // error e = f / lc - prod lifted (mod p^{k+1});
        Int lc_inv = mod_inverse(f.leading() % pk1, pk1);
        ZPoly fm = detail::balance_mod(f, pk1);
        std::vector<Int> fc(fm.coeffs());
        for (auto& v : fc) {
            v = (v * lc_inv) % pk1;
            if (v < 0) v += pk1;
        }
        ZPoly monic_f(std::move(fc));
        ZPoly prod = ZPoly::constant(Int(1));
        for (const auto& g : lifted) prod = detail::mul_mod(prod, g, pk1);
        ZPoly e = monic_f - prod;
        // e = pk * u
        std::vector<Int> uc(e.coeffs());
        for (auto& v : uc) {
            v %= pk1;
            if (v < 0) v += pk1;
            if (v % pk != 0)
                throw error("InternalError", "hensel_lift: error term not divisible");
            v /= pk;
        }
        ZPoly u(std::move(uc));
        PolyFp up = PolyFp::from_zpoly(u, p);
        for (std::size_t i = 0; i < r; ++i) {
            PolyFp delta = (up * cofactor_inv[i]).mod(factors_p[i]);
            ZPoly dz = detail::zpoly_from_fp(delta);
            lifted[i] = lifted[i] + dz * pk;
        }
        pk = pk1;
    }
    return {lifted, pk};
}

/**
 * Exact irreducibility test over Q for integer polynomials.
 *
 * Strategy: squarefreeness and content first; then factorization patterns
 * modulo several good primes (a degree-set certificate settles most inputs);
 * if the certificate is inconclusive, Hensel lifting plus factor
 * recombination decides the question definitively.
 */
inline bool is_irreducible_over_Q(const ZPoly& input) {
    ZPoly f = primitive_part(input);
    long n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    if (f[0] == 0) return false; // divisible by x
    if (gcd(f, f.derivative()).degree() > 0) return false;

    static const std::uint64_t candidate_primes[] = {
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
        59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127};

    std::vector<std::uint64_t> degree_possible(static_cast<std::size_t>(n) + 1, 1);
    bool have_certificate_input = false;
    std::uint64_t best_p = 0;
    std::vector<PolyFp> best_factors;
    int good_primes = 0;

    for (std::uint64_t p : candidate_primes) {
        if (f.leading() % Int(p) == 0) continue;
        PolyFp fp = PolyFp::from_zpoly(f, p);
        if (PolyFp::gcd(fp, fp.derivative()).degree() != 0) continue;
        auto factors = factor_mod_p_squarefree(fp);
        if (factors.size() == 1) return true; // irreducible mod p
        // subset sums of factor degrees = conceivable rational factor degrees
        std::vector<std::uint64_t> reachable(static_cast<std::size_t>(n) + 1, 0);
        reachable[0] = 1;
        for (const auto& g : factors) {
            long d = g.degree();
            for (long s = n; s >= d; --s)
                if (reachable[static_cast<std::size_t>(s - d)]) reachable[static_cast<std::size_t>(s)] = 1;
        }
        for (long s = 0; s <= n; ++s)
            degree_possible[static_cast<std::size_t>(s)] &= reachable[static_cast<std::size_t>(s)];
        have_certificate_input = true;
        bool proper_possible = false;
        for (long s = 1; s < n; ++s)
            if (degree_possible[static_cast<std::size_t>(s)]) proper_possible = true;
        if (!proper_possible) return true;
        if (best_p == 0 || factors.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(factors);
        }
        if (++good_primes >= 5 && best_factors.size() <= 8) break;
        if (good_primes >= 10) break;
    }

    if (!have_certificate_input)
        throw error("InternalError", "is_irreducible_over_Q: no usable prime");

    // Hensel lift and recombine.
    Int target = detail::factor_coeff_bound(f) * abs(f.leading()) * 2 + 1;
    auto [lifted, pk] = hensel_lift(f, best_factors, best_p, target);
    const std::size_t r = lifted.size();

    // enumerate subsets by cardinality up to r/2
    std::vector<std::size_t> idx;
    std::vector<char> in_use(r, 0);
    auto subset_degree = [&](const std::vector<std::size_t>& sel) {
        long d = 0;
        for (auto i : sel) d += lifted[i].degree();
        return d;
    };
    // recursive enumeration with divisibility test at each complete subset
    struct Searcher {
        const std::vector<ZPoly>& lifted;
        const ZPoly& f;
        const Int& pk;
        const std::vector<std::uint64_t>& degree_possible;
        long n;

        bool try_subsets(std::vector<std::size_t>& sel, std::size_t start, std::size_t want) {
            if (want == 0) {
                long d = 0;
                for (auto i : sel) d += lifted[i].degree();
                if (d == 0 || d >= n) return false;
                if (!degree_possible[static_cast<std::size_t>(d)]) return false;
                ZPoly cand = ZPoly::constant(f.leading());
                for (auto i : sel) cand = detail::mul_mod(cand, lifted[i], pk);
                cand = detail::balance_mod(cand, pk);
                ZPoly h = primitive_part(cand);
                if (h.degree() >= 1 && h.degree() < n && divides(h, f)) return true;
                return false;
            }
            for (std::size_t i = start; i + want <= lifted.size(); ++i) {
                sel.push_back(i);
                if (try_subsets(sel, i + 1, want - 1)) return true;
                sel.pop_back();
            }
            return false;
        }
    } searcher{lifted, f, pk, degree_possible, n};

    (void)subset_degree;
    (void)in_use;
    std::vector<std::size_t> sel;
    for (std::size_t c = 1; 2 * c <= r; ++c) {
        sel.clear();
        if (c * 2 == r) {
            // fix index 0 in the subset to avoid testing complements twice
            sel.push_back(0);
            if (searcher.try_subsets(sel, 1, c - 1)) return false;
        } else {
            if (searcher.try_subsets(sel, 0, c)) return false;
        }
    }
    return true;
}

} // namespace totreal
