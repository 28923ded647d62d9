#pragma once

#include <map>
#include <numeric>
#include <utility>

#include "totreal/integer.hpp"
#include "totreal/poly.hpp"

namespace totreal {

/**
 * Exact integer combination of roots of unity sum c_a * e^(2 pi i a),
 * a in Q/Z.  Terms are kept with exponents canonicalized into [0, 1/2)
 * using e^(2 pi i (a + 1/2)) = -e^(2 pi i a), so sums of g-values reduce
 * aggressively; equality falls back on reduction modulo the cyclotomic
 * polynomial when the formal difference does not vanish.
 */
class GSum {
public:
    GSum() = default;

    static GSum constant(const Int& c) {
        GSum r;
        if (c != 0) r.terms_[{0, 1}] = c;
        return r;
    }

    /// g(a) = e^(2 pi i a) + e^(-2 pi i a) for rational a.
    static GSum g(const Rat& a) {
        GSum r;
        r.add_term(a, 1);
        r.add_term(-a, 1);
        return r;
    }

    bool formally_zero() const { return terms_.empty(); }

    GSum operator-() const {
        GSum r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    GSum operator+(const GSum& o) const {
        GSum r = *this;
        for (const auto& [e, c] : o.terms_) r.add_exponent(e.first, e.second, c);
        return r;
    }

    GSum operator-(const GSum& o) const { return *this + (-o); }

    GSum operator*(const GSum& o) const {
        GSum r;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                // exponents add mod 1
                Rat e(Rat(e1.first, e1.second) + Rat(e2.first, e2.second));
                e.canonicalize();
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    /// Exact test of the represented (real) number being 0: reduce the
    /// exponent polynomial modulo the cyclotomic polynomial of the common
    /// order.
    bool is_zero() const {
        if (terms_.empty()) return true;
        long order = 1;
        for (const auto& [e, c] : terms_) {
            (void)c;
            long den = e.second;
            long g = std::gcd(order, den);
            if (order / g > 1000000 / den) throw error("InternalError", "GSum: order too large");
            order = order / g * den;
        }
        std::vector<Int> coeffs(static_cast<std::size_t>(order), 0);
        for (const auto& [e, c] : terms_) {
            long k = e.first * (order / e.second);
            coeffs[static_cast<std::size_t>(k % order)] += c;
        }
        ZPoly f{std::move(coeffs)};
        if (f.is_zero()) return true;
        const ZPoly& phi = cyclotomic(static_cast<unsigned long>(order));
        auto [q, r] = divmod(to_qpoly(f), to_qpoly(phi));
        (void)q;
        return r.is_zero();
    }

    friend bool operator==(const GSum& a, const GSum& b) { return (a - b).is_zero(); }

private:
    void add_term(Rat a, const Int& c) {
        if (c == 0) return;
        // reduce a mod 1 into [0, 1)
        a.canonicalize();
        Int fl = floor_rat(a);
        a -= Rat(fl);
        a.canonicalize();
        long num = static_cast<long>(a.get_num().get_si());
        long den = static_cast<long>(a.get_den().get_si());
        add_exponent(num, den, c);
    }

    void add_exponent(long num, long den, Int c) {
        // exponent num/den in [0, 1); fold into [0, 1/2)
        if (2 * num >= den) {
            num = 2 * num - den; // a - 1/2, scaled by 2
            den = 2 * den;
            long g = std::gcd(num, den);
            num /= g;
            den /= g;
            c = -c;
        }
        auto key = std::make_pair(num, den);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(key, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<std::pair<long, long>, Int> terms_;
};

} // namespace totreal
