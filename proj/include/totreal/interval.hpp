#pragma once

#include <map>
#include <mutex>
#include <optional>

#include "totreal/integer.hpp"
#include "totreal/poly.hpp"

namespace totreal {

/// Closed interval with rational endpoints.  All operations round outward,
/// so any real in the operand intervals maps into the result interval.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
    explicit RatInterval(const Rat& point) : lo(point), hi(point) {}

    static RatInterval of(const Rat& a, const Rat& b) {
        return a <= b ? RatInterval(a, b) : RatInterval(b, a);
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    /// Sign if certified, otherwise nullopt (interval straddles zero).
    std::optional<int> sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (lo == 0 && hi == 0) return 0;
        return std::nullopt;
    }

    bool overlaps(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }

    RatInterval operator-() const { return {-hi, -lo}; }

    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }

    RatInterval operator*(const RatInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return {mn, mx};
    }

    RatInterval operator+(const Rat& s) const { return {lo + s, hi + s}; }
    RatInterval operator-(const Rat& s) const { return {lo - s, hi - s}; }
    RatInterval operator*(const Rat& s) const {
        return s >= 0 ? RatInterval(lo * s, hi * s) : RatInterval(hi * s, lo * s);
    }

    Rat max_abs() const {
        Rat a = abs(lo), b = abs(hi);
        return a > b ? a : b;
    }
};

inline RatInterval operator*(const Rat& s, const RatInterval& iv) { return iv * s; }

/// Interval Horner evaluation of an integer or rational polynomial.
template <class T>
inline RatInterval eval_interval(const Poly<T>& f, const RatInterval& x) {
    RatInterval acc(Rat(0));
    for (std::size_t i = f.coeffs().size(); i-- > 0;)
        acc = acc * x + Rat(f.coeffs()[i]);
    return acc;
}

/// Round a rational outward to dyadic endpoints with denominator 2^bits.
inline RatInterval dyadic_outward(const RatInterval& iv, unsigned bits) {
    Int scale = Int(1) << bits;
    Rat lo(floor_rat(iv.lo * Rat(scale)), scale);
    Rat hi(ceil_rat(iv.hi * Rat(scale)), scale);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

/// Enclosure of sqrt over a nonnegative interval, accurate to ~2^-bits.
inline RatInterval sqrt_interval(const RatInterval& x, unsigned bits) {
    if (x.lo < 0) throw out_of_range_error("sqrt_interval: negative interval");
    Int scale = Int(1) << (2 * bits);
    auto lower = [&](const Rat& v) {
        // floor(sqrt(v * 4^bits)) / 2^bits
        Int n = floor_rat(v * Rat(scale));
        return Rat(isqrt(n), Int(1) << bits);
    };
    auto upper = [&](const Rat& v) {
        Int n = ceil_rat(v * Rat(scale));
        Int r = isqrt(n);
        if (r * r < n) r += 1;
        return Rat(r, Int(1) << bits);
    };
    Rat lo = lower(x.lo), hi = upper(x.hi);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// rigorous pi and cosine enclosures
// ---------------------------------------------------------------------------

/// Enclosure of pi via Machin's formula with alternating-series tail bounds.
inline RatInterval pi_interval(unsigned bits) {
    static std::map<unsigned, RatInterval> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;
    // pi = 16 atan(1/5) - 4 atan(1/239); atan(1/m) = sum (-1)^k / ((2k+1) m^(2k+1))
    auto atan_inv = [&](unsigned long m) {
        Rat lo(0), hi(0);
        Rat term;
        Int mpow = m;
        Int m2 = Int(m) * Int(m);
        unsigned long k = 0;
        Rat sum(0);
        while (true) {
            term = Rat(1, (2 * k + 1) * mpow);
            if (k % 2 == 0) sum += term;
            else sum -= term;
            // alternating with decreasing terms: truncation error bounded by
            // the next term
            Rat next = Rat(1, (2 * k + 3) * (mpow * m2));
            if (next < Rat(Int(1), Int(1) << (bits + 8))) {
                if (k % 2 == 0) { lo = sum - next; hi = sum; }
                else { lo = sum; hi = sum + next; }
                break;
            }
            mpow *= m2;
            ++k;
        }
        return RatInterval(lo, hi);
    };
    RatInterval a5 = atan_inv(5), a239 = atan_inv(239);
    RatInterval pi = a5 * Rat(16) - a239 * Rat(4);
    pi = dyadic_outward(pi, bits + 4);
    cache.emplace(bits, pi);
    return pi;
}

/// Certified enclosure of cos(t) for rational t, |t| <= 4, via Taylor series
/// with an explicit tail bound.
inline RatInterval cos_interval_rat(const Rat& t, unsigned bits) {
    Rat t2 = t * t;
    if (t2 > 16) throw out_of_range_error("cos_interval_rat: |t| too large");
    Rat sum(1), term(1);
    unsigned long k = 0;
    Rat eps(Int(1), Int(1) << (bits + 4));
    while (true) {
        // term_{k+1} = term_k * (-t^2) / ((2k+1)(2k+2))
        term = term * t2 / Rat((2 * k + 1) * (2 * k + 2));
        ++k;
        if (k % 2 == 1) sum -= term;
        else sum += term;
        // once the term ratio is < 1, the tail is bounded by the next term
        // times 1/(1 - ratio) <= 2 * next term for ratio <= 1/2
        Rat ratio = t2 / Rat((2 * k + 1) * (2 * k + 2));
        if (ratio < Rat(1, 2)) {
            Rat next = term * ratio;
            Rat tail = next * 2;
            if (tail < eps) {
                RatInterval out(sum - tail, sum + tail);
                return dyadic_outward(out, bits);
            }
        }
    }
}

/**
 * Certified enclosure of 2 cos(2 pi s / n) for 0 <= s <= n/2, to roughly
 * `bits` bits.  Exact at the rational points s/n in {0, 1/4, 1/2}.
 */
inline RatInterval two_cos_two_pi(long s, long n, unsigned bits) {
    // canonical range: angle in [0, pi]
    if (n <= 0 || s < 0 || 2 * s > n) throw out_of_range_error("two_cos_two_pi: bad argument");
    if (s == 0) return RatInterval(Rat(2));
    if (2 * s == n) return RatInterval(Rat(-2));
    if (4 * s == n) return RatInterval(Rat(0));
    // theta = 2 pi s / n in (0, pi); use cos(theta) = -cos(pi - theta) to keep
    // the Taylor argument <= pi/2 + small
    RatInterval pi = pi_interval(bits + 8);
    bool flip = false;
    Rat frac(2 * s, n); // theta / pi
    frac.canonicalize();
    if (frac > 1) throw out_of_range_error("two_cos_two_pi: bad fraction");
    if (frac > Rat(1, 2)) {
        frac = 1 - frac;
        flip = true;
    }
    RatInterval theta = pi * frac; // in (0, pi/2]
    // cos is decreasing on [0, pi]; evaluate at both endpoints
    RatInterval chi = cos_interval_rat(theta.lo, bits + 4);
    RatInterval clo = cos_interval_rat(theta.hi, bits + 4);
    RatInterval c(clo.lo, chi.hi);
    if (flip) c = -c;
    return dyadic_outward(c * Rat(2), bits);
}

} // namespace totreal
