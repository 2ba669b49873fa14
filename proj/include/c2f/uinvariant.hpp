#pragma once

#include "c2f/isotropy.hpp"

#include <optional>
#include <string>

namespace c2f {

// u-invariant report for a field tower. The lower bound is witnessed by a
// concrete anisotropic form; the upper bound for Laurent towers comes from
// the layer-doubling rule u(K((t))) = 2 u(K), an external classical fact the
// report labels as rule-derived, spot-checked on sampled forms two
// dimensions above the bound. In characteristic 2 every class in the Witt
// group has finite order, so the order condition in the definition is
// vacuous here (stated in the notes).
struct UReport {
    FieldPtr field;
    int lower = 0;
    QuadraticForm lower_witness;
    std::string lower_witness_text;
    std::optional<int> upper;  // absent when a RationalFunc layer blocks the rule
    std::string upper_rule;
    bool exact = false;
    std::vector<std::string> notes;
};

UReport u_invariant(const FieldPtr& F, std::uint64_t seed = 0, int spot_samples = 3);

}  // namespace c2f
