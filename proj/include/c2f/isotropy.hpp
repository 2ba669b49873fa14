#pragma once

#include "c2f/quadform.hpp"
#include "c2f/search.hpp"

#include <optional>

// Isotropy decision and Witt decomposition.
//
// Engines by field kind:
//   Finite        exhaustive scans plus the Arf-based classification of
//                 nonsingular forms; always decisive.
//   LaurentLocal  residue descent for the complete field: each block is
//                 reduced to a unit times [1, c] with c integral (peeling
//                 negative Arf valuations by exact wp-shifts), the form
//                 splits by valuation parity into two residue forms over
//                 the base, and the verdict recurses. Anisotropy of both
//                 residue forms certifies anisotropy. For nonsingular
//                 forms the recursion also computes the anisotropic
//                 dimension exactly; every anisotropy verdict issued here
//                 is cross-checked by bounded search in the test suite.
//   RationalFunc  bounded witness search; Isotropic or Unknown only.

namespace c2f {

enum class AnisoProof { Exhaustive, ResidueDescent };

struct IsotropyVerdict {
    enum class Kind { Isotropic, Anisotropic, Unknown } kind = Kind::Unknown;
    std::vector<Elem> witness;          // Isotropic
    AnisoProof proof = AnisoProof::Exhaustive;
    long long budget_spent = 0;
    std::string note;
};

IsotropyVerdict isotropy_decide(const QuadraticForm& q, const SearchConfig& cfg = {});

enum class Tri { Yes, No, DontKnow };

/// Sound anisotropy certification (Yes is a proof; No means an isotropy
/// decision exists for the complete field, not necessarily a witness).
Tri certify_anisotropic(const QuadraticForm& q);

/// Exact anisotropic dimension for nonsingular forms over decisive engines
/// (finite fields, Laurent towers with clean block reduction).
std::optional<int> anisotropic_dim(const QuadraticForm& q);
std::optional<int> witt_index_of(const QuadraticForm& q);

/// Exact isotropy test of the quasilinear part alone via the 2-basis
/// component matrix; returns a witness for the quasilinear coordinates.
std::optional<std::vector<Elem>> quasilinear_kernel_witness(const FieldPtr& F,
                                                            const std::vector<Elem>& entries);

struct WittDecomposition {
    int witt_index = 0;
    QuadraticForm kernel;  // residual form after extracted splits
    std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> hyperbolic_pairs;
    bool pairs_complete = false;   // pairs match witt_index and kernel is verified
    bool index_certified = false;  // witt_index comes from a decisive engine
};

WittDecomposition witt_decompose(const QuadraticForm& q, const SearchConfig& cfg = {});

bool witt_equivalent(const QuadraticForm& a, const QuadraticForm& b, const SearchConfig& cfg = {});
bool isometric(const QuadraticForm& a, const QuadraticForm& b, const SearchConfig& cfg = {});
/// True iff psi embeds isometrically into phi (both nonsingular):
/// witt_index(phi | psi) >= dim psi.
bool subform_test(const QuadraticForm& psi, const QuadraticForm& phi, const SearchConfig& cfg = {});

}  // namespace c2f
