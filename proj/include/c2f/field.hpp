#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic in towers of characteristic-p fields.
//
// A tower is described by a chain of layers over a finite root:
//   finite(p,k)                 GF(p^k) with a fixed modulus table
//   rational(base, "t")         base(t), rational functions in t
//   laurent(base, "t")          base((t)), represented by its dense
//                               rational-function subfield; verdicts about
//                               the complete field are issued by the
//                               valuation/residue machinery built on top.
//
// Elements are immutable values in canonical form: finite elements are
// coordinate vectors over the prime field, layer elements are reduced
// fractions of polynomials with monic denominator. Equality is structural.

namespace c2f {

struct Field;
using FieldPtr = std::shared_ptr<const Field>;

enum class FieldKind { Finite, RationalFunc, LaurentLocal };

struct Field {
    FieldKind kind;

    // finite root
    int p = 0;
    int k = 1;
    std::vector<int> modulus;  // monic, little-endian, length k+1 (k >= 2)

    // function-field layers
    FieldPtr base;
    std::string var;
    int depth = 0;  // layers above the finite root

    static FieldPtr finite(int p, int k = 1);
    static FieldPtr rational(FieldPtr base, const std::string& var);
    static FieldPtr laurent(FieldPtr base, const std::string& var);

    int characteristic() const;
    bool is_finite() const { return kind == FieldKind::Finite; }
    bool has_var(const std::string& v) const;
    /// Number of elements for finite fields (p^k); throws otherwise.
    std::uint64_t order() const;
    /// Text form of the tower, e.g. "GF(2^3)((a))((b))".
    std::string spec() const;
    /// True if some layer of the tower (including this one) is LaurentLocal.
    bool has_laurent_layer() const;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

class Elem;
using Poly = std::vector<Elem>;  // little-endian coefficients over base, trimmed

struct FracPayload {
    Poly num;  // empty <=> zero
    Poly den;  // monic, gcd(num,den)=1
};

class Elem {
public:
    Elem() = default;

    const FieldPtr& field() const { return f_; }
    bool valid() const { return f_ != nullptr; }
    bool is_zero() const;
    bool is_one() const;

    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator-() const;
    Elem operator*(const Elem& o) const;
    Elem operator/(const Elem& o) const;
    bool operator==(const Elem& o) const;
    bool operator!=(const Elem& o) const { return !(*this == o); }

    Elem pow(std::uint64_t e) const;
    Elem inverse() const;
    /// x -> x^p (the absolute Frobenius of the tower's characteristic).
    Elem frobenius() const;

    // finite payload access
    const std::vector<std::uint8_t>& coords() const;
    // layer payload access
    const Poly& num() const;
    const Poly& den() const;

    std::string str() const;
    std::uint64_t hash() const;

    // construction
    static Elem zero(const FieldPtr& f);
    static Elem one(const FieldPtr& f);
    static Elem from_int(const FieldPtr& f, long long n);
    /// Generator of the top layer: the layer variable, or g for GF(p^k), k>=2.
    static Elem generator(const FieldPtr& f);
    /// Constant embedding of an element of the base layer.
    static Elem embed(const FieldPtr& f, const Elem& base_elem);
    /// Element of a layer field from a (num, den) pair of base-coefficient polys.
    static Elem from_fraction(const FieldPtr& f, Poly num, Poly den);
    static Elem from_poly(const FieldPtr& f, Poly num);
    static Elem finite_from_coords(const FieldPtr& f, std::vector<std::uint8_t> c);

private:
    FieldPtr f_;
    std::vector<std::uint8_t> fin_;
    std::shared_ptr<const FracPayload> fr_;

    friend Elem make_canonical_fraction(const FieldPtr&, Poly, Poly);
};

// ---------------------------------------------------------------------------
// polynomial helpers over an explicit coefficient field
// ---------------------------------------------------------------------------

void poly_trim(Poly& a);
bool poly_is_zero(const Poly& a);
int poly_deg(const Poly& a);  // -1 for zero
Poly poly_add(const FieldPtr& K, const Poly& a, const Poly& b);
Poly poly_sub(const FieldPtr& K, const Poly& a, const Poly& b);
Poly poly_neg(const FieldPtr& K, const Poly& a);
Poly poly_mul(const FieldPtr& K, const Poly& a, const Poly& b);
Poly poly_scale(const FieldPtr& K, const Poly& a, const Elem& c);
/// Division with remainder; throws on zero divisor.
std::pair<Poly, Poly> poly_divrem(const FieldPtr& K, const Poly& a, const Poly& b);
Poly poly_gcd(const FieldPtr& K, Poly a, Poly b);  // monic
Poly poly_monic(const FieldPtr& K, const Poly& a);
/// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
int poly_ord(const Poly& a);
Poly poly_shift(const Poly& a, int m);  // multiply by t^m, m >= 0

// ---------------------------------------------------------------------------
// layer-specific views
// ---------------------------------------------------------------------------

/// Layer-adic valuation of a nonzero element of a function layer.
int top_valuation(const Elem& e);
/// Coefficient of the lowest-order term of the layer expansion (base element).
Elem top_leading(const Elem& e);
/// Value at t = 0 of an element with nonnegative valuation (base element).
Elem eval_at_zero(const Elem& e);
/// Multiply by t^m (m may be negative).
Elem shift_by_var(const Elem& e, int m);
/// Coefficient of t^j in the Laurent expansion, computed exactly (base element).
Elem series_coeff(const Elem& e, int j);

struct ValuationResult {
    bool infinite = false;  // e == 0
    int v = 0;
    Elem leading;           // element of the layer's base field
};

/// Valuation and leading coefficient at the named LaurentLocal layer.
/// For layers below the top, the element must be constant in every layer
/// above the named one.
ValuationResult valuation_residue(const Elem& e, const std::string& layer);

// ---------------------------------------------------------------------------
// misc
// ---------------------------------------------------------------------------

/// Deterministic splittable RNG used by all randomized machinery.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed = 0) : state(seed + 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

/// Random element whose layer coordinates are polynomials of degree <= deg.
Elem random_elem(const FieldPtr& f, Rng& rng, int deg = 2, bool nonzero = false);

/// True when the element has trivial denominators at every layer.
bool is_polynomial_tower(const Elem& e);
/// An element d with d*e polynomial at every layer (1 for finite fields).
Elem full_denominator(const Elem& e);

}  // namespace c2f
