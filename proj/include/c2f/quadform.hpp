#pragma once

#include "c2f/field.hpp"
#include "c2f/wp.hpp"

#include <utility>
#include <vector>

// Characteristic-2 quadratic forms: an orthogonal sum of binary blocks
// [a,b](x,y) = ax^2 + xy + by^2 and a totally singular diagonal part
// sum c_j z_j^2. Nonsingular <=> the diagonal part is empty.

namespace c2f {

struct QuadraticForm {
    FieldPtr owner;
    std::vector<std::pair<Elem, Elem>> blocks;
    std::vector<Elem> quasilinear;  // nonzero entries

    int dim() const { return 2 * static_cast<int>(blocks.size()) + static_cast<int>(quasilinear.size()); }
    bool nonsingular() const { return quasilinear.empty(); }
    std::string str() const;
};

struct DiagonalBilinear {
    FieldPtr owner;
    std::vector<Elem> entries;  // nonzero
};

struct PfisterSlots {
    std::vector<Elem> bilinear;  // a_1, ..., a_{n-1}, nonzero
    Elem quad;                   // b
};

QuadraticForm qf_empty(const FieldPtr& F);
QuadraticForm qf_block(const Elem& a, const Elem& b);
QuadraticForm hyperbolic_plane(const FieldPtr& F);
QuadraticForm qf_quasilinear(const FieldPtr& F, std::vector<Elem> entries);
QuadraticForm qf_sum(const QuadraticForm& a, const QuadraticForm& b);
/// c * q with the block normalization c[a,b] = [ca, b/c]; quasilinear
/// entries scale directly.
QuadraticForm qf_scale(const Elem& c, const QuadraticForm& q);

DiagonalBilinear bilinear_diag(const FieldPtr& F, std::vector<Elem> entries);
/// (B (x) q), q nonsingular: orthogonal sum of d_i * q.
QuadraticForm tensor(const DiagonalBilinear& B, const QuadraticForm& q);
/// << a_1, ..., a_{n-1}, b ]]  as a 2^n-dimensional quadratic form.
QuadraticForm pfister_quad(const FieldPtr& F, const PfisterSlots& s);

Elem evaluate(const QuadraticForm& q, const std::vector<Elem>& v);
Elem polar(const QuadraticForm& q, const std::vector<Elem>& u, const std::vector<Elem>& v);

enum class ArfClass { Trivial, NonTrivial, Unknown };

struct ArfResult {
    Elem representative;  // sum a_i b_i
    ArfClass cls = ArfClass::Unknown;
    WpResult detail;
};

/// Arf invariant of a nonsingular form as a class in F/wp(F).
ArfResult arf(const QuadraticForm& q, int budget = 4096);

}  // namespace c2f
