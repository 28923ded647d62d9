#pragma once

#include <memory>
#include <mutex>

#include "totreal/interval.hpp"
#include "totreal/poly.hpp"

namespace totreal {

/**
 * A real algebraic number: primitive integer minimal polynomial plus an
 * isolating interval with dyadic endpoints.  Copies share the underlying
 * interval cell, so refinement performed through any copy benefits all of
 * them; refinement is monotone (the interval only ever shrinks around the
 * same root) and internally synchronized.
 */
class AlgebraicReal {
public:
    AlgebraicReal() : AlgebraicReal(Rat(0)) {}

    AlgebraicReal(ZPoly minpoly, RatInterval isolating)
        : minpoly_(std::make_shared<ZPoly>(std::move(minpoly))),
          cell_(std::make_shared<Cell>()) {
        cell_->iv = std::move(isolating);
        normalize_endpoints();
    }

    explicit AlgebraicReal(const Rat& value)
        : minpoly_(std::make_shared<ZPoly>(
              ZPoly({-value.get_num(), value.get_den()}))),
          cell_(std::make_shared<Cell>()) {
        cell_->iv = RatInterval(value);
    }

    const ZPoly& minpoly() const { return *minpoly_; }
    long degree() const { return minpoly_->degree(); }
    bool is_rational() const { return degree() == 1; }

    Rat rational_value() const {
        if (!is_rational()) throw error("InternalError", "not a rational value");
        Rat v(-(*minpoly_)[0], (*minpoly_)[1]);
        v.canonicalize();
        return v;
    }

    RatInterval interval() const {
        std::lock_guard<std::mutex> lock(cell_->mu);
        return cell_->iv;
    }

    /// Halve the interval once (no-op on point intervals).
    void refine_step() const {
        std::lock_guard<std::mutex> lock(cell_->mu);
        refine_locked();
    }

    /// Refine until width <= 2^-bits and return the snapshot.
    RatInterval refine_to(unsigned bits) const {
        Rat eps(Int(1), Int(1) << bits);
        std::lock_guard<std::mutex> lock(cell_->mu);
        while (cell_->iv.width() > eps) refine_locked();
        return cell_->iv;
    }

    /// Exact sign of the number.
    int sign() const {
        if (is_rational()) {
            Rat v = rational_value();
            return v > 0 ? 1 : (v < 0 ? -1 : 0);
        }
        // irreducible of degree >= 2: the root is irrational, hence nonzero
        for (;;) {
            RatInterval iv = interval();
            if (auto s = iv.sign(); s && *s != 0) return *s;
            if (iv.lo > 0) return 1;
            if (iv.hi < 0) return -1;
            refine_step();
        }
    }

    /// Exact equality of the represented real numbers.
    friend bool equal(const AlgebraicReal& a, const AlgebraicReal& b) {
        if (a.minpoly() != b.minpoly()) return false;
        if (a.is_rational()) return a.rational_value() == b.rational_value();
        RatInterval ia = a.interval(), ib = b.interval();
        Rat lo = std::max(ia.lo, ib.lo), hi = std::min(ia.hi, ib.hi);
        if (lo > hi) return false;
        // Both intervals isolate one root of the same squarefree polynomial
        // with nonzero values at the endpoints: they denote the same root
        // exactly when a root lies in the intersection.
        SturmSequence sturm(a.minpoly());
        return sturm.count_roots(lo, hi) > 0;
    }

    /// Exact order comparison.
    friend int compare(const AlgebraicReal& a, const AlgebraicReal& b) {
        if (equal(a, b)) return 0;
        for (;;) {
            RatInterval ia = a.interval(), ib = b.interval();
            if (ia.hi < ib.lo) return -1;
            if (ib.hi < ia.lo) return 1;
            a.refine_step();
            b.refine_step();
        }
    }

    int compare_rational(const Rat& q) const {
        if (is_rational()) {
            Rat v = rational_value();
            return v > q ? 1 : (v < q ? -1 : 0);
        }
        // q is not a root of an irreducible polynomial of degree >= 2
        for (;;) {
            RatInterval iv = interval();
            if (iv.lo > q) return 1;
            if (iv.hi < q) return -1;
            refine_step();
        }
    }

private:
    struct Cell {
        mutable std::mutex mu;
        RatInterval iv;
    };

    void refine_locked() const {
        RatInterval& iv = cell_->iv;
        if (iv.is_point()) return;
        Rat mid = iv.mid();
        Rat fmid = minpoly_->eval(mid);
        if (fmid == 0) {
            iv = RatInterval(mid);
            return;
        }
        Rat flo = minpoly_->eval(iv.lo);
        if ((flo > 0) == (fmid > 0)) iv.lo = mid;
        else iv.hi = mid;
    }

    void normalize_endpoints() {
        // Endpoints must not be roots so that sign bisection is valid.
        RatInterval& iv = cell_->iv;
        if (iv.is_point()) return;
        if (minpoly_->eval(iv.lo) == 0) {
            iv = RatInterval(iv.lo);
            return;
        }
        if (minpoly_->eval(iv.hi) == 0) {
            iv = RatInterval(iv.hi);
            return;
        }
    }

    std::shared_ptr<ZPoly> minpoly_;
    std::shared_ptr<Cell> cell_;
};

/// All real roots of an irreducible integer polynomial, ascending.
inline std::vector<AlgebraicReal> real_roots_of_irreducible(const ZPoly& f) {
    std::vector<AlgebraicReal> out;
    for (auto& [lo, hi] : isolate_real_roots(f))
        out.emplace_back(f, RatInterval(lo, hi));
    return out;
}

} // namespace totreal
