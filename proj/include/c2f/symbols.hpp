#pragma once

#include "c2f/albert.hpp"
#include "c2f/asext.hpp"
#include "c2f/quadform.hpp"

#include <optional>

// Logarithmic differential-symbol calculus for the groups H^{n+1}(F):
// formal sums of symbols b dlog(a_1) ^ ... ^ dlog(a_n), rewritten by
// witness-carrying local rules. Derivations are checkable chains; the
// checker replays every step from its witnesses alone. Equality of two
// arbitrary symbol sums is NOT decided here, only certificates are checked.

namespace c2f {

struct DifferentialSymbol {
    Elem coeff;
    std::vector<Elem> slots;  // nonzero
    int degree() const { return static_cast<int>(slots.size()); }
    bool operator==(const DifferentialSymbol& o) const;
    std::string str() const;
};

DifferentialSymbol make_symbol(const Elem& coeff, std::vector<Elem> slots);

using SymbolExpr = std::vector<DifferentialSymbol>;  // degree-homogeneous

enum class RuleTag {
    CoeffShift,         // (a): coeff += k * slot_i
    SlotNormScale,      // (b): slot_i *= N_{F_coeff}(u), u invertible
    Combined,           // (c): coeff += slot_i * N(u); slot_i *= N(u)
    CoeffWpKill,        // coeff = lambda^p - lambda -> ZERO
    SlotPthPowerShift,  // slot_i += c^p, coeff *= new/old (d of p-th powers vanishes)
    SlotMultSplit,      // slot_i = f1*f2 -> two symbols (dlog additivity)
    SlotRepeatKill,     // two equal slots -> ZERO
    SlotSwap,           // transpose slots, negate coeff
    CoeffAdditiveSplit  // coeff = f1+f2 -> two symbols; merge direction joins two
};

std::string rule_name(RuleTag t);
std::optional<RuleTag> rule_from_name(const std::string& s);

struct WitnessBundle {
    std::optional<ASExt> u;
    std::optional<Elem> beta;    // claimed norm value (checked against as_norm)
    std::optional<Elem> lambda;  // wp witness
    std::optional<Elem> c;       // p-th power shift witness
    std::optional<Elem> f1, f2;  // factors / additive parts
};

struct RewriteStep {
    RuleTag rule;
    int sym = 0;           // target symbol index in the expression
    int sym2 = -1;         // second symbol (merge direction)
    int slot = -1;         // 0-based slot index
    int slot2 = -1;        // second slot (swap / repeat kill)
    int multiplicity = 1;  // CoeffShift: number of rule-(a) applications bundled
    bool merge = false;    // CoeffAdditiveSplit direction
    WitnessBundle w;
};

struct Derivation {
    SymbolExpr start;
    std::vector<RewriteStep> steps;
    std::vector<SymbolExpr> intermediates;  // expression after each step
    bool ends_zero = false;                 // final expression is empty
};

/// Apply one step; throws std::invalid_argument naming the violated side
/// condition.
SymbolExpr apply_step(const SymbolExpr& e, const RewriteStep& s);

struct CheckReport {
    bool ok = false;
    int failed_step = -1;  // -1: structural failure before any step
    std::string reason;
};

/// Independent replay of the chain: every witness verified, every recorded
/// intermediate compared.
CheckReport check_derivation(const Derivation& d);

/// The constructive H^4 vanishing reduction. The witness must be a
/// nontrivial zero of A(alpha1, alpha2, gamma, delta) where
/// (alpha1, alpha2) comes from lemma_new_split(alpha, beta).
Derivation reduce_h4(const Elem& alpha, const Elem& beta, const Elem& gamma, const Elem& delta,
                     const AlbertWitness& w);

/// The constructive H^3 vanishing reduction from a zero of the pure part of
/// A(alpha, alpha, gamma, delta).
Derivation reduce_h3_pure(const Elem& alpha, const Elem& gamma, const Elem& delta,
                          const PureWitness& w);

/// Kato correspondence on generators (characteristic 2):
/// b dlog(a_1)^...^dlog(a_n) -> << a_1, ..., a_n, b ]].
PfisterSlots kato_pfister(const DifferentialSymbol& s);

/// Brauer-group symbol of a cyclic algebra: [alpha, beta) -> alpha dlog(beta).
DifferentialSymbol brauer_symbol(const CyclicAlgebraSymbol& alg);

// line-oriented serialization (BEGIN / SYM / STEP / END records); the parser
// module provides the inverse
std::string serialize(const Derivation& d);

}  // namespace c2f
