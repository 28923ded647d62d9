#pragma once

#include <utility>

#include "totreal/integer.hpp"

namespace totreal {

/// Residue modulo p^k with tracked precision.  Arithmetic carries the
/// minimum precision of the operands; dividing by p drops one digit of
/// precision and is the only operation that does.
class PadicInt {
public:
    PadicInt() = default;

    PadicInt(Int p, int k, Int value) : p_(std::move(p)), k_(k) {
        if (k_ < 1) throw out_of_range_error("precision must be at least 1");
        mod_ = 1;
        for (int i = 0; i < k_; ++i) mod_ *= p_;
        residue_ = ((value % mod_) + mod_) % mod_;
    }

    const Int& p() const { return p_; }
    int precision() const { return k_; }
    const Int& residue() const { return residue_; }
    const Int& modulus() const { return mod_; }

    bool is_unit() const { return residue_ % p_ != 0; }

    PadicInt with_precision(int k) const {
        if (k > k_) throw out_of_range_error("cannot raise precision");
        return PadicInt(p_, k, residue_);
    }

    PadicInt operator+(const PadicInt& o) const {
        check(o);
        int k = std::min(k_, o.k_);
        return PadicInt(p_, k, residue_ + o.residue_);
    }

    PadicInt operator-(const PadicInt& o) const {
        check(o);
        int k = std::min(k_, o.k_);
        return PadicInt(p_, k, residue_ - o.residue_);
    }

    PadicInt operator*(const PadicInt& o) const {
        check(o);
        int k = std::min(k_, o.k_);
        return PadicInt(p_, k, residue_ * o.residue_);
    }

    PadicInt inverse() const {
        if (!is_unit()) throw not_unit_error();
        return PadicInt(p_, k_, mod_inverse(residue_, mod_));
    }

    /// Exact division by p; requires p | residue and costs one digit of
    /// precision.
    PadicInt div_by_p() const {
        if (residue_ % p_ != 0) throw not_unit_error("residue not divisible by p");
        if (k_ < 2) throw out_of_range_error("no precision left");
        return PadicInt(p_, k_ - 1, residue_ / p_);
    }

    bool operator==(const PadicInt& o) const {
        return p_ == o.p_ && k_ == o.k_ && residue_ == o.residue_;
    }

private:
    void check(const PadicInt& o) const {
        if (p_ != o.p_) throw prime_mismatch_error();
    }

    Int p_ = 2;
    int k_ = 1;
    Int residue_ = 0;
    Int mod_ = 2;
};

enum class PadicOp { add, mul, inv };

inline PadicInt padic_arith(PadicOp op, const PadicInt& a, const PadicInt& b) {
    switch (op) {
    case PadicOp::add: return a + b;
    case PadicOp::mul: return a * b;
    case PadicOp::inv: return a.inverse();
    }
    throw out_of_range_error("bad op");
}

namespace detail {

/// Square root mod an odd prime via Tonelli-Shanks; nullopt for
/// non-residues.
inline std::optional<Int> sqrt_mod_p(const Int& a0, const Int& p) {
    Int a = ((a0 % p) + p) % p;
    if (a == 0) return Int(0);
    if (mod_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
    // write p - 1 = q 2^s with q odd
    Int q = p - 1;
    long s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    // find a quadratic non-residue z
    Int z = 2;
    while (mod_pow(z, (p - 1) / 2, p) != p - 1) z += 1;
    Int m = s, c = mod_pow(z, q, p), t = mod_pow(a, q, p), r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) { tt = (tt * tt) % p; ++i; }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    return r;
}

} // namespace detail

/**
 * p-adic square root by Hensel lifting.  For odd p the input must be a
 * unit square; for p = 2 the input must be 1 mod 8.  Among the roots,
 * the one with the smallest residue is returned.
 */
inline PadicInt hensel_sqrt(const PadicInt& a) {
    const Int& p = a.p();
    int k = a.precision();
    const Int& mod = a.modulus();
    if (p == 2) {
        if (a.residue() % 8 != 1) throw non_residue_error("need a = 1 (mod 8)");
        // lift bit by bit: r^2 = a (mod 2^m) -> choose the next bit of r
        Int r = 1;
        Int two_m = 8;
        for (int m = 3; m < k; ++m) {
            Int diff = (a.residue() - r * r) % (two_m * 2);
            if (diff < 0) diff += two_m * 2;
            if (diff % (two_m * 2) != 0) {
                // set bit 2^(m-1)
                r += two_m / 2;
            }
            two_m *= 2;
        }
        r %= mod;
        // four roots: +-r, +-r + 2^(k-1); pick the smallest valid residue
        Int best = -1;
        std::vector<Int> candidates{r, Int(mod - r), Int((r + mod / 2) % mod),
                                    Int((mod - r + mod / 2) % mod)};
        for (const Int& cand : candidates) {
            if ((cand * cand - a.residue()) % mod != 0) continue;
            if (best < 0 || cand < best) best = cand;
        }
        if (best < 0) throw error("InternalError", "hensel_sqrt: 2-adic lift failed");
        return PadicInt(p, k, best);
    }
    if (!a.is_unit()) throw non_residue_error("need a unit");
    auto r0 = detail::sqrt_mod_p(a.residue(), p);
    if (!r0) throw non_residue_error();
    // Newton iteration r -> r - (r^2 - a) / (2r), doubling precision
    Int r = *r0;
    Int cur = p;
    int have = 1;
    while (have < k) {
        have = std::min(2 * have, k);
        Int next_mod = 1;
        for (int i = 0; i < have; ++i) next_mod *= p;
        Int inv2r = mod_inverse((2 * r) % next_mod, next_mod);
        r = (r - (r * r - a.residue()) % next_mod * inv2r) % next_mod;
        r = ((r % next_mod) + next_mod) % next_mod;
        cur = next_mod;
    }
    (void)cur;
    Int other = mod - r;
    return PadicInt(p, k, std::min(r, other));
}

/**
 * beta1^2 + beta2^2 = -1 (mod p^k) for odd p: when -1 is a residue mod p
 * the canonical answer uses beta2 = 0; otherwise the smallest beta2 >= 1
 * with -1 - beta2^2 a nonzero residue is lifted.
 */
inline std::pair<PadicInt, PadicInt> minus_one_two_squares(const Int& p, int k) {
    if (p == 2 || !is_prime(p)) throw out_of_range_error("need an odd prime");
    PadicInt minus_one(p, k, Int(-1));
    if (detail::sqrt_mod_p(Int(-1), p)) {
        PadicInt b1 = hensel_sqrt(minus_one);
        return {b1, PadicInt(p, k, Int(0))};
    }
    for (Int b2 = 1;; b2 += 1) {
        Int target = -1 - b2 * b2;
        Int targ_mod_p = ((target % p) + p) % p;
        if (targ_mod_p == 0) continue;
        if (!detail::sqrt_mod_p(target, p)) continue;
        PadicInt b1 = hensel_sqrt(PadicInt(p, k, target));
        return {b1, PadicInt(p, k, b2)};
    }
}

/// Witness for W^2 + WX + X^2 + Y^2 + Z^2 = alpha over Z_p at the stated
/// precision.
struct LocalWitness {
    Int p;
    int precision = 1;
    PadicInt w, x, y, z;

    PadicInt quadratic_value() const {
        return w * w + w * x + x * x + y * y + z * z;
    }
};

/**
 * Local representation of any alpha by W^2 + WX + X^2 + Y^2 + Z^2.
 *
 * Odd p: w = x = 0 and the three-square identity
 *   alpha = ((alpha+1)/2)^2 + (b1 (alpha-1)/2)^2 + (b2 (alpha-1)/2)^2
 * with b1^2 + b2^2 = -1 (2 is invertible, no precision loss).
 * p = 2: units are represented by W^2 + WX + X^2 (Hensel on the simple
 * root of X^2 + X + (1 - alpha) mod 2); non-units write alpha = (alpha-1)
 * + 1^2 with alpha - 1 a unit, using Y = 1.  The returned witness is
 * re-verified against its congruence before returning.
 */
inline LocalWitness local_represent(const Int& p, const PadicInt& alpha) {
    if (alpha.p() != p) throw prime_mismatch_error();
    int k = alpha.precision();
    LocalWitness wit;
    wit.p = p;
    wit.precision = k;
    if (p != 2) {
        auto [b1, b2] = minus_one_two_squares(p, k);
        PadicInt inv2 = PadicInt(p, k, Int(2)).inverse();
        PadicInt ap1 = (alpha + PadicInt(p, k, Int(1))) * inv2;
        PadicInt am1 = (alpha - PadicInt(p, k, Int(1))) * inv2;
        wit.w = PadicInt(p, k, Int(0));
        wit.x = ap1;
        wit.y = b1 * am1;
        wit.z = b2 * am1;
    } else {
        PadicInt one(p, k, Int(1));
        auto solve_unit = [&](const PadicInt& gamma) {
            // beta1 = 1; solve f(t) = t^2 + t + (1 - gamma) = 0.  Both
            // residues mod 2 are simple roots (f' = 2t + 1 is a unit); lift
            // each and keep the smallest solution.
            Int best = -1;
            for (Int start = 0; start <= 1; start += 1) {
                Int t = start;
                Int m = 2;
                for (int have = 1; have < k; ++have) {
                    Int next = m * 2;
                    Int val = ((t * t + t + 1 - gamma.residue()) % next + next) % next;
                    if (val != 0) t += m; // the other lift of t mod next
                    m = next;
                }
                Int val = ((t * t + t + 1 - gamma.residue()) % m + m) % m;
                if (val != 0) throw error("InternalError", "dyadic Hensel failed");
                if (best < 0 || t < best) best = t;
            }
            return PadicInt(p, k, best);
        };
        if (alpha.is_unit()) {
            wit.w = one;
            wit.x = solve_unit(alpha);
            wit.y = PadicInt(p, k, Int(0));
            wit.z = PadicInt(p, k, Int(0));
        } else {
            PadicInt gamma = alpha - one; // a unit
            wit.w = one;
            wit.x = solve_unit(gamma);
            wit.y = one;
            wit.z = PadicInt(p, k, Int(0));
        }
    }
    if (!(wit.quadratic_value() == alpha))
        throw error("InternalError", "local witness failed verification");
    return wit;
}

} // namespace totreal
