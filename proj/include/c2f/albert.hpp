#pragma once

#include "c2f/asext.hpp"
#include "c2f/isotropy.hpp"
#include "c2f/quadform.hpp"

#include <optional>

// Albert p-forms for pairs of cyclic algebras [alpha,gamma) and [beta,delta)
// of degree p, their pure parts, linkage verdicts, and the explicit
// constructions used by the subform results.

namespace c2f {

struct CyclicAlgebraSymbol {
    int p = 2;
    Elem alpha;  // Artin-Schreier slot
    Elem beta;   // radical slot, nonzero
};

CyclicAlgebraSymbol cyclic_symbol(int p, const Elem& alpha, const Elem& beta);

struct AlbertPForm {
    int p = 2;
    Elem alpha, beta;   // Artin-Schreier slots
    Elem gamma, delta;  // nonzero scalars
    const FieldPtr& field() const { return alpha.field(); }
};

AlbertPForm albert_form(int p, const Elem& alpha, const Elem& beta, const Elem& gamma,
                        const Elem& delta);

/// (x, y, z) in F_{alpha+beta} (+) F_alpha (+) F_beta.
Elem evaluate_albert(const AlbertPForm& A, const ASExt& x, const ASExt& y, const ASExt& z);
/// Restriction of the first slot to F: x^p + gamma N(y) + delta N(z).
Elem evaluate_pure(const AlbertPForm& A, const Elem& x, const ASExt& y, const ASExt& z);

/// p = 2: [1, alpha+beta] | gamma[1, alpha] | delta[1, beta], dim 6.
QuadraticForm albert_to_quadratic(const AlbertPForm& A);
/// p = 2: gamma[1, alpha] | delta[1, beta] | <1>, dim 5 (blocks first, then
/// the quasilinear coordinate).
QuadraticForm pure_part_quadratic(const AlbertPForm& A);

struct AlbertWitness {
    ASExt x, y, z;
    bool nontrivial() const { return !(x.is_zero() && y.is_zero() && z.is_zero()); }
};
struct PureWitness {
    Elem x;
    ASExt y, z;
    bool nontrivial() const { return !(x.is_zero() && y.is_zero() && z.is_zero()); }
};

enum class LinkKind { Yes, No, NoEvidence };

struct LinkageVerdict {
    LinkKind kind = LinkKind::NoEvidence;
    std::string note;  // proof tag for No; "sufficient condition only" for p > 2
    std::optional<AlbertWitness> witness;
    std::optional<PureWitness> pure_witness;
    bool definitional_iff = false;  // p = 2: the test characterizes linkage
};

LinkageVerdict linked_separably(const AlbertPForm& A, const SearchConfig& cfg = {});
LinkageVerdict linked_inseparably(const AlbertPForm& A, const SearchConfig& cfg = {});

// ---------------------------------------------------------------------------
// explicit constructions
// ---------------------------------------------------------------------------

struct SplitWitness {
    Elem alpha1, alpha2, t, u;
    ASExt t_scalar;  // scalar t in F_alpha: norm t^p
    ASExt u_elem;    // -(x_gen + t) in F_alpha: norm u
};

/// alpha = alpha1 + alpha2 with t = (alpha*beta - alpha)/beta,
/// alpha1 = alpha + beta t^p, alpha2 = alpha - beta(t^p - t + alpha),
/// u = -(t^p - t + alpha); norm witnesses verified exactly.
SplitWitness lemma_new_split(const Elem& alpha, const Elem& beta);

struct SuballemReport {
    QuadraticForm psi;
    Elem t, alpha1, alpha2;
    bool dim_ok = false, nonsingular_ok = false, arf_trivial = false, subform_ok = false;
    bool all_pass() const { return dim_ok && nonsingular_ok && arf_trivial && subform_ok; }
};

/// psi = l1[1,alpha] | l2[1,alpha1] | l3[1,alpha2], an Albert subform of
/// <l1,l2,l3> (x) <<beta, alpha]].
SuballemReport suballem_construct(const Elem& beta, const Elem& alpha, const Elem& l1,
                                  const Elem& l2, const Elem& l3, const SearchConfig& cfg = {});

struct SubalbertReport {
    QuadraticForm phi, rho, psi;
    SuballemReport inner;
    bool psi_in_rho = false, rho_in_phi = false, psi_in_phi = false;
    bool all_pass() const {
        return inner.all_pass() && psi_in_rho && rho_in_phi && psi_in_phi;
    }
};

/// phi = <<delta, gamma, beta, alpha]]; the extracted Albert subform comes
/// from rho = pi | delta pi | gamma pi with pi = <<beta, alpha]].
SubalbertReport subalbert_extract(const Elem& delta, const Elem& gamma, const Elem& beta,
                                  const Elem& alpha, const SearchConfig& cfg = {});

// ---------------------------------------------------------------------------
// odd characteristic (finite fields containing a square root of -1)
// ---------------------------------------------------------------------------

struct OddCharAlbert {
    std::vector<Elem> diag;  // 6 diagonal entries
    bool disc_trivial = false;
    std::optional<std::vector<Elem>> isotropy_witness;
};

OddCharAlbert odd_char_albert_subform(const Elem& alpha, const Elem& beta, const Elem& l1,
                                      const Elem& l2, const Elem& l3);

bool euler_is_square(const Elem& e);  // finite fields, odd characteristic

// ---------------------------------------------------------------------------
// planted-zero instance generators (used by the reduction drivers and tests)
// ---------------------------------------------------------------------------

struct PlantedAlbert {
    Elem alpha, beta, gamma, delta;
    SplitWitness split;
    AlbertWitness witness;  // zero of A(alpha1, alpha2, gamma, delta)
};
PlantedAlbert plant_albert_zero(const FieldPtr& F, int p, Rng& rng, bool force_x_zero = false);

struct PlantedPure {
    Elem alpha, gamma, delta;
    PureWitness witness;  // zero of the pure part of A(alpha, alpha, gamma, delta)
};
PlantedPure plant_pure_zero(const FieldPtr& F, int p, Rng& rng);

}  // namespace c2f
