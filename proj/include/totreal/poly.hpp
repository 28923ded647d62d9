#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "totreal/integer.hpp"

namespace totreal {

/**
 * Dense univariate polynomial with coefficients in ascending degree order.
 * The canonical form never stores trailing zero coefficients, so the zero
 * polynomial has an empty coefficient vector and degree() == -1.
 */
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }

    /// x^k with unit coefficient.
    static Poly monomial(std::size_t k, const T& coeff = T(1)) {
        std::vector<T> c(k + 1, T(0));
        c[k] = coeff;
        return Poly(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const T& operator[](std::size_t i) const {
        static const T z{};
        return i < c_.size() ? c_[i] : z;
    }

    const std::vector<T>& coeffs() const { return c_; }

    const T& leading() const { return c_.back(); }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

    Poly operator-() const {
        std::vector<T> r(c_);
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }

    Poly operator+(const Poly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Poly(std::move(r));
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }

    Poly operator*(const T& s) const {
        std::vector<T> r(c_);
        for (auto& v : r) v = v * s;
        return Poly(std::move(r));
    }

    template <class U>
    U eval(const U& x) const {
        U acc{};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + U(c_[i]);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(r));
    }

    /// Substitute x -> x + a.
    Poly shift(const T& a) const {
        Poly acc;
        Poly lin({a, T(1)});
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + constant(c_[i]);
        return acc;
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == T(0)) continue;
            T a = c_[i];
            if (!first) os << (a < T(0) ? " - " : " + ");
            else if (a < T(0)) os << "-";
            T mag = a < T(0) ? T(-a) : a;
            if (i == 0 || mag != T(1)) os << to_string(mag);
            if (i >= 1) {
                if (mag != T(1)) os << "*";
                os << var;
                if (i >= 2) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }

    std::vector<T> c_;
};

using ZPoly = Poly<Int>;
using QPoly = Poly<Rat>;

inline QPoly to_qpoly(const ZPoly& f) {
    std::vector<Rat> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(f.coeffs()[i]);
    return QPoly(std::move(c));
}

/// Clears denominators and divides by content; sign chosen so the leading
/// coefficient is positive.  Maps 0 to 0.
inline ZPoly primitive_part(const QPoly& f) {
    if (f.is_zero()) return ZPoly();
    Int den = 1;
    for (const auto& q : f.coeffs()) den = lcm(den, q.get_den());
    std::vector<Int> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Rat v = f.coeffs()[i] * Rat(den);
        c[i] = v.get_num();
    }
    Int g = 0;
    for (const auto& v : c) g = gcd(g, v);
    if (c.back() < 0) g = -g;
    for (auto& v : c) v /= g;
    return ZPoly(std::move(c));
}

inline ZPoly primitive_part(const ZPoly& f) { return primitive_part(to_qpoly(f)); }

// ---------------------------------------------------------------------------
// division
// ---------------------------------------------------------------------------

/// Quotient and remainder over a field (Rat).
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    std::vector<Rat> r(a.coeffs());
    long db = b.degree();
    if (db < 0) throw division_by_zero_error("polynomial division by zero");
    long da = a.degree();
    if (da < db) return {QPoly(), a};
    std::vector<Rat> q(static_cast<std::size_t>(da - db + 1), Rat(0));
    for (long i = da; i >= db; --i) {
        Rat coef = r[static_cast<std::size_t>(i)] / b.leading();
        if (coef == 0) continue;
        q[static_cast<std::size_t>(i - db)] = coef;
        for (long j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i - db + j)] -= coef * b[static_cast<std::size_t>(j)];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

/// Exact division over Z; the divisor must divide without remainder.
inline ZPoly exact_div(const ZPoly& a, const ZPoly& b) {
    auto [q, r] = divmod(to_qpoly(a), to_qpoly(b));
    if (!r.is_zero()) throw error("InternalError", "exact_div: nonzero remainder");
    std::vector<Int> c(q.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (q.coeffs()[i].get_den() != 1)
            throw error("InternalError", "exact_div: non-integer quotient");
        c[i] = q.coeffs()[i].get_num();
    }
    return ZPoly(std::move(c));
}

inline bool divides(const ZPoly& b, const ZPoly& a) {
    if (b.is_zero()) return a.is_zero();
    auto [q, r] = divmod(to_qpoly(a), to_qpoly(b));
    if (!r.is_zero()) return false;
    for (const auto& v : q.coeffs())
        if (v.get_den() != 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// gcd / resultant (subresultant PRS keeps integer growth polynomial)
// ---------------------------------------------------------------------------

inline QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly f = a, g = b;
    while (!g.is_zero()) {
        auto [q, r] = divmod(f, g);
        (void)q;
        f = g;
        g = r;
    }
    if (f.is_zero()) return f;
    // monic normalization
    Rat inv = Rat(1) / f.leading();
    return f * inv;
}

/// Primitive gcd in Z[x].
inline ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    QPoly g = gcd(to_qpoly(a), to_qpoly(b));
    return primitive_part(g);
}

/// Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f = q*g + r over Z.
inline ZPoly pseudo_rem(const ZPoly& f, const ZPoly& g) {
    long df = f.degree(), dg = g.degree();
    if (dg < 0) throw division_by_zero_error("pseudo_rem by zero");
    if (df < dg) return f;
    const Int& lg = g.leading();
    Int mult = 1;
    for (long i = 0; i <= df - dg; ++i) mult *= lg;
    std::vector<Int> rr(f.coeffs());
    for (auto& v : rr) v *= mult;
    long dr = static_cast<long>(rr.size()) - 1;
    while (dr >= dg) {
        Int coef = rr[static_cast<std::size_t>(dr)] / lg;
        for (long j = 0; j <= dg; ++j)
            rr[static_cast<std::size_t>(dr - dg + j)] -= coef * g[static_cast<std::size_t>(j)];
        while (dr >= 0 && rr[static_cast<std::size_t>(dr)] == 0) --dr;
    }
    rr.resize(static_cast<std::size_t>(dr + 1));
    return ZPoly(std::move(rr));
}

/**
 * Resultant of two integer polynomials.  Pseudo-remainder recursion with a
 * running rational scale; remainders are reduced to primitive form to keep
 * coefficient growth in check.
 *
 * Identities used, for m = deg f >= n = deg g >= 1 and r = prem(f, g):
 *   res(f, g) = lc(g)^(m - deg r - (m-n+1) n) (-1)^(n deg r) res(g, r)
 *   res(g, c r') = c^(deg g) res(g, r')
 *   res(f, c)  = c^(deg f)                        (c constant)
 */
inline Int resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    ZPoly f = a, g = b;
    int sign = 1;
    if (f.degree() < g.degree()) {
        if ((f.degree() & 1) && (g.degree() & 1)) sign = -sign;
        std::swap(f, g);
    }
    Int num = 1, den = 1;
    auto powi = [](const Int& base, long e) {
        Int r = 1;
        for (long i = 0; i < e; ++i) r *= base;
        return r;
    };
    while (g.degree() >= 1) {
        long m = f.degree(), n = g.degree();
        ZPoly r = pseudo_rem(f, g);
        if (r.is_zero()) return 0;
        long dr = r.degree();
        long e = m - dr - (m - n + 1) * n;
        if (e >= 0) num *= powi(g.leading(), e);
        else den *= powi(g.leading(), -e);
        if ((n & 1) && (dr & 1)) sign = -sign;
        // strip content from r: res(g, c r') = c^n res(g, r')
        ZPoly rp = primitive_part(r);
        Int content = r.leading() / rp.leading();
        if (content < 0) {
            // primitive_part normalizes lc > 0; track the sign via (-1)^n
            if (n & 1) sign = -sign;
            content = -content;
        }
        num *= powi(content, n);
        f = g;
        g = rp;
        Int cg = gcd(num, den);
        if (cg > 1) { num /= cg; den /= cg; }
    }
    if (g.is_zero()) return 0;
    Int total = powi(g.leading(), f.degree()) * num;
    if (total % den != 0)
        throw error("InternalError", "resultant: scale not integral");
    return sign > 0 ? Int(total / den) : Int(-(total / den));
}

inline Int discriminant(const ZPoly& f) {
    long n = f.degree();
    if (n < 1) return 1;
    Int res = resultant(f, f.derivative());
    Int lc = f.leading();
    Int d = res / lc;
    // disc = (-1)^(n(n-1)/2) res(f, f') / lc
    if (((n * (n - 1) / 2) & 1) != 0) d = -d;
    return d;
}

/// f / gcd(f, f'): the radical (squarefree part), primitive with positive lc.
inline ZPoly squarefree_part(const ZPoly& f) {
    if (f.degree() <= 0) return primitive_part(f);
    ZPoly g = gcd(f, f.derivative());
    if (g.degree() == 0) return primitive_part(f);
    return primitive_part(exact_div(primitive_part(f) * g.leading(), g));
}

/// Exact square root of a monic polynomial in Z[x], if one exists.
inline std::optional<ZPoly> poly_sqrt_monic(const ZPoly& f) {
    long n = f.degree();
    if (n < 0 || (n & 1) || f.leading() != 1) return std::nullopt;
    long m = n / 2;
    std::vector<Int> r(static_cast<std::size_t>(m + 1), 0);
    r[static_cast<std::size_t>(m)] = 1;
    // determine coefficients from the top: compare degree (m + k) terms
    for (long k = m - 1; k >= 0; --k) {
        // coefficient of x^(m+k) in r^2: 2*r_m*r_k + sum_{i+j=m+k, i,j<m+1, i,j>k} r_i r_j
        Int acc = 0;
        for (long i = k + 1; i <= m; ++i) {
            long j = m + k - i;
            if (j > k && j <= m && j >= 0) acc += r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)];
        }
        Int target = f[static_cast<std::size_t>(m + k)] - acc;
        if (target % 2 != 0) return std::nullopt;
        r[static_cast<std::size_t>(k)] = target / 2;
    }
    ZPoly root{std::vector<Int>(r)};
    if (root * root != f) return std::nullopt;
    return root;
}

// ---------------------------------------------------------------------------
// Sturm sequences and real-root machinery
// ---------------------------------------------------------------------------

/// Divide by the (positive) content, preserving the sign of the polynomial.
inline ZPoly divide_content_keep_sign(const ZPoly& f) {
    if (f.is_zero()) return f;
    Int g = 0;
    for (const auto& c : f.coeffs()) g = gcd(g, c);
    std::vector<Int> c(f.coeffs());
    for (auto& v : c) v /= g;
    return ZPoly(std::move(c));
}

inline ZPoly divide_content_keep_sign(const QPoly& f) {
    if (f.is_zero()) return ZPoly();
    Int den = 1;
    for (const auto& q : f.coeffs()) den = lcm(den, q.get_den());
    std::vector<Int> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(f.coeffs()[i] * Rat(den)).get_num();
    return divide_content_keep_sign(ZPoly(std::move(c)));
}

/// Sturm chain of a squarefree integer polynomial.  Elements are scaled by
/// positive constants only (sign flips would corrupt the variation counts).
class SturmSequence {
public:
    explicit SturmSequence(const ZPoly& f) {
        ZPoly p0 = divide_content_keep_sign(f);
        seq_.push_back(p0);
        ZPoly p1 = divide_content_keep_sign(p0.derivative());
        if (!p1.is_zero()) seq_.push_back(p1);
        while (seq_.back().degree() > 0) {
            const ZPoly& a = seq_[seq_.size() - 2];
            const ZPoly& b = seq_.back();
            auto [q, r] = divmod(to_qpoly(a), to_qpoly(b));
            (void)q;
            if (r.is_zero()) break;
            seq_.push_back(-divide_content_keep_sign(r));
        }
    }

    /// Number of sign variations at x = t (zeros skipped).
    int variations(const Rat& t) const {
        int v = 0, prev = 0;
        for (const auto& p : seq_) {
            Rat val = p.eval(t);
            int s = val > 0 ? 1 : (val < 0 ? -1 : 0);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    /// Sign variations "at +infinity" / "-infinity".
    int variations_at_infinity(int dir) const {
        int v = 0, prev = 0;
        for (const auto& p : seq_) {
            long d = p.degree();
            if (d < 0) continue;
            int s = p.leading() > 0 ? 1 : -1;
            if (dir < 0 && (d & 1)) s = -s;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    int count_roots(const Rat& a, const Rat& b) const {
        return variations(a) - variations(b);
    }

    int count_real_roots() const {
        return variations_at_infinity(-1) - variations_at_infinity(+1);
    }

private:
    std::vector<ZPoly> seq_;
};

/// A power-of-two upper bound B with all real roots of f in (-B, B).
inline Rat cauchy_root_bound(const ZPoly& f) {
    long n = f.degree();
    if (n <= 0) return Rat(1);
    Rat m(0);
    for (long i = 0; i < n; ++i) {
        Rat v = Rat(abs(f[static_cast<std::size_t>(i)])) / Rat(abs(f.leading()));
        if (v > m) m = v;
    }
    Rat bound = m + 1;
    Rat b(2);
    while (b < bound) b *= 2;
    return b;
}

/// Isolating intervals (a, b] with dyadic endpoints for all real roots of a
/// squarefree polynomial, sorted in increasing order.  Each interval
/// contains exactly one root, and f(a) != 0, f(b) != 0.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const ZPoly& f0) {
    ZPoly f = squarefree_part(f0);
    std::vector<std::pair<Rat, Rat>> out;
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        Rat root = Rat(-f[0]) / Rat(f[1]);
        out.emplace_back(root, root);
        return out;
    }
    SturmSequence sturm(f);
    Rat bound = cauchy_root_bound(f);
    // endpoints at +-bound are never roots (strict Cauchy bound)
    struct Seg { Rat a, b; int count; };
    std::vector<Seg> stack;
    int total = sturm.count_roots(-bound, bound);
    if (total == 0) return out;
    stack.push_back({-bound, bound, total});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 0) continue;
        if (s.count == 1) {
            // ensure endpoints are not roots; endpoints are dyadic and the
            // polynomial is squarefree with irrational roots unless linear
            // factors exist over Q -- handle exact dyadic roots explicitly.
            Rat fa = f.eval(s.a), fb = f.eval(s.b);
            if (fb == 0) {
                out.emplace_back(s.b, s.b);
                continue;
            }
            if (fa == 0) {
                // root at left endpoint belongs to the neighbor; shrink
                Rat mid = (s.a + s.b) / 2;
                while (f.eval(mid) == 0) mid = (s.a + mid) / 2;
                if (sturm.count_roots(mid, s.b) == 1) {
                    stack.push_back({mid, s.b, 1});
                } // else root was the endpoint itself: impossible for squarefree shrink
                continue;
            }
            out.emplace_back(s.a, s.b);
            continue;
        }
        Rat mid = (s.a + s.b) / 2;
        if (f.eval(mid) == 0) {
            // dyadic rational root: emit as a point and split around it
            out.emplace_back(mid, mid);
            // isolate remaining roots strictly inside each half, stepping off the root
            Rat eps = (s.b - s.a);
            Rat lo = mid, hi = mid;
            do {
                eps /= 2;
                lo = mid - eps;
                hi = mid + eps;
            } while (f.eval(lo) == 0 || f.eval(hi) == 0);
            int left = sturm.count_roots(s.a, lo);
            int right = sturm.count_roots(hi, s.b);
            if (left > 0) stack.push_back({s.a, lo, left});
            if (right > 0) stack.push_back({hi, s.b, right});
            continue;
        }
        int left = sturm.count_roots(s.a, mid);
        int right = s.count - left;
        if (left > 0) stack.push_back({s.a, mid, left});
        if (right > 0) stack.push_back({mid, s.b, right});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    // make consecutive intervals strictly disjoint (they may share a dyadic
    // endpoint after bisection); each interval has a sign change, so one-step
    // halving toward the root works
    auto shrink = [&](std::pair<Rat, Rat>& iv) {
        Rat mid = (iv.first + iv.second) / 2;
        Rat fm = f.eval(mid);
        if (fm == 0) {
            iv = {mid, mid};
            return;
        }
        Rat fl = f.eval(iv.first);
        if ((fl > 0) == (fm > 0)) iv.first = mid;
        else iv.second = mid;
    };
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        while (out[i].second >= out[i + 1].first) {
            if (out[i].first != out[i].second) shrink(out[i]);
            if (out[i + 1].first != out[i + 1].second) shrink(out[i + 1]);
        }
    }
    return out;
}

inline int count_real_roots(const ZPoly& f) {
    ZPoly s = squarefree_part(f);
    if (s.degree() <= 0) return 0;
    return SturmSequence(s).count_real_roots();
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials
// ---------------------------------------------------------------------------

/// Phi_n(x), cached (the cache is safe for concurrent population).
inline const ZPoly& cyclotomic(unsigned long n) {
    static std::map<unsigned long, ZPoly> cache;
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    ZPoly result;
    if (n == 1) {
        result = ZPoly({Int(-1), Int(1)});
    } else {
        // x^n - 1 divided by the product of Phi_d for proper divisors d
        std::vector<Int> c(n + 1, 0);
        c[0] = -1;
        c[n] = 1;
        result = ZPoly(std::move(c));
        for (unsigned long d = 1; d < n; ++d)
            if (n % d == 0) result = exact_div(result, cyclotomic(d));
    }
    return cache.emplace(n, std::move(result)).first->second;
}

/**
 * Minimal polynomial over Q of 2cos(2*pi/n) (equivalently of 2cos(2*pi*s/n)
 * for any s coprime to n).  Obtained by eliminating z from Phi_n(z) and
 * z^2 - x z + 1: the resultant equals the square of the minimal polynomial
 * for n >= 3 and is linear in the degenerate cases n = 1, 2.
 */
inline const ZPoly& cos_minpoly(unsigned long n) {
    static std::map<unsigned long, ZPoly> cache;
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    ZPoly result;
    if (n == 1) {
        result = ZPoly({Int(-2), Int(1)}); // x - 2
    } else if (n == 2) {
        result = ZPoly({Int(2), Int(1)}); // x + 2
    } else {
        // Work in Z[x][w] / (w^2 = x*w - 1): evaluate Phi_n at w by Horner.
        // Res_z(Phi_n, z^2 - xz + 1) = Phi_n(w) * Phi_n(x - w) = a^2 + abx + b^2
        // for Phi_n(w) = a(x) + b(x) w.
        const ZPoly& phi = cyclotomic(n);
        ZPoly a = ZPoly::constant(phi.leading());
        ZPoly b; // zero
        ZPoly X = ZPoly::x();
        for (long i = phi.degree() - 1; i >= 0; --i) {
            // (a + b w) * w = -b + (a + b x) w
            ZPoly na = -b;
            ZPoly nb = a + b * X;
            a = na + ZPoly::constant(phi[static_cast<std::size_t>(i)]);
            b = nb;
        }
        ZPoly res = a * a + a * b * X + b * b;
        auto root = poly_sqrt_monic(primitive_part(res));
        if (!root)
            throw error("InternalError", "cos_minpoly: resultant is not a perfect square");
        result = *root;
    }
    return cache.emplace(n, std::move(result)).first->second;
}

} // namespace totreal
