#pragma once

#include "c2f/field.hpp"

// Elements of F_a = F[x]/(x^p - x - a) in the basis 1, x, ..., x^{p-1}.
// When a lies in wp(F) this is an etale algebra rather than a field; the
// norm (the determinant of the multiplication map) then has nontrivial
// zeros, which is exactly the behaviour the callers rely on.

namespace c2f {

struct ASExt {
    Elem a;                // defining scalar
    std::vector<Elem> c;   // p coordinates over F

    const FieldPtr& field() const { return a.field(); }
    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    bool operator==(const ASExt& o) const;
    std::string str() const;
};

ASExt asext_zero(const Elem& a);
ASExt asext_scalar(const Elem& a, const Elem& s);
/// The class of x, the Artin-Schreier generator.
ASExt asext_gen(const Elem& a);
ASExt asext_make(const Elem& a, std::vector<Elem> coords);

ASExt asext_add(const ASExt& u, const ASExt& v);
ASExt asext_sub(const ASExt& u, const ASExt& v);
ASExt asext_neg(const ASExt& u);
ASExt asext_mul(const ASExt& u, const ASExt& v);
ASExt asext_scale(const ASExt& u, const Elem& s);
/// Multiplicative inverse; requires as_norm(u) != 0.
ASExt asext_inverse(const ASExt& u);

/// N_{F_a/F}(u): determinant of the multiplication-by-u matrix.
Elem as_norm(const ASExt& u);

ASExt random_asext(const Elem& a, Rng& rng, int deg = 2, bool nonzero = false);

}  // namespace c2f
