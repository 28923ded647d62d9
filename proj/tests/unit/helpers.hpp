#pragma once

#include <numeric>

#include "totreal/cyclo.hpp"
#include "totreal/numberfield.hpp"

namespace totreal::testing {

/// The standard cosine field Q(g(1/n)).
inline FieldPtr cosine_field(long n) {
    return NumberField::create_trusted(cos_minpoly(static_cast<unsigned long>(n)));
}

/// g(k/n) as an element of Q(g(1/n)), via the product recurrence
/// g((k+1)/n) = g(1/n) g(k/n) - g((k-1)/n).
inline FieldElement cosine_element(const FieldPtr& Kn, long k) {
    FieldElement prev = FieldElement::from_rational(Kn, Rat(2)); // g(0)
    if (k == 0) return prev;
    FieldElement theta = FieldElement::generator(Kn);
    FieldElement cur = theta;
    for (long i = 1; i < k; ++i) {
        FieldElement next = theta * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Pin a field element as an algebraic real through the default embedding
/// of its field.
inline AlgebraicReal pinned_value(const FieldElement& x) {
    ZPoly m = minpoly_of(x);
    if (m.degree() == 1) {
        Rat v(-m[0], m[1]);
        v.canonicalize();
        return AlgebraicReal(v);
    }
    SturmSequence sturm(m);
    for (unsigned bits = 64;; bits *= 2) {
        RatInterval iv = x.eval_embedding(x.field()->default_embedding(), bits);
        if (m.eval(iv.lo) != 0 && m.eval(iv.hi) != 0 && sturm.count_roots(iv.lo, iv.hi) == 1)
            return AlgebraicReal(m, iv);
    }
}

} // namespace totreal::testing
