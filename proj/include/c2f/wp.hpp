#pragma once

#include "c2f/field.hpp"

#include <optional>

// The Artin-Schreier map wp(x) = x^p - x and its inverse problem.
//
// wp_solve decides membership of a in the image of wp, with three kinds of
// positive/negative answer:
//   ExactWitness   an exact element lambda with lambda^p - lambda = a
//   InImage        membership holds for the complete field of a Laurent
//                  tower; the witness is truncated but passes a liftability
//                  check (the residual error is topologically small)
//   NotInImage     proven obstruction, with a proof tag
//   Unknown        budget exhausted (never claimed as a proof)
//
// Over finite fields the decision is linear algebra over the prime field.
// Over function layers an exact rational witness is found or refuted by
// flattening to polynomials over the finite bottom (towers of depth <= 2)
// and solving the semilinear system coefficient-wise over GF(p).

namespace c2f {

enum class WpKind { ExactWitness, InImage, NotInImage, Unknown };

struct WpResult {
    WpKind kind = WpKind::Unknown;
    std::optional<Elem> witness;  // exact or truncated (InImage)
    std::string proof;            // route tag
    bool proves_membership() const {
        return kind == WpKind::ExactWitness || kind == WpKind::InImage;
    }
};

WpResult wp_solve(const Elem& a, int budget = 4096);

/// Exact p-th root within the same field, if one exists.
std::optional<Elem> pth_root(const Elem& e);
bool is_pth_power(const Elem& e);

/// Decomposition over the 2-basis of a characteristic-2 tower:
///   e = sum over masks B of mono(B) * comp[B]^2,
/// where mono(B) is the product of the layer variables selected by the bit
/// mask (bit 0 = bottom layer variable). Finite bottoms are perfect and
/// contribute no basis bits. Returns all 2^depth components, zeros included.
std::vector<Elem> frobenius_components(const Elem& e);

/// True when e - wp(x) can be made arbitrarily close to 0 in the Laurent
/// topology: e is regular at every Laurent layer and its bottom constant
/// term vanishes. Used as the liftability check for truncated witnesses.
bool topologically_small(const Elem& e);

}  // namespace c2f
