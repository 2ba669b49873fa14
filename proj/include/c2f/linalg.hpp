#pragma once

#include "c2f/field.hpp"

#include <optional>
#include <vector>

// Dense exact linear algebra over a field of Elems. Small systems only.

namespace c2f {

using Mat = std::vector<std::vector<Elem>>;

/// Row-reduce M augmented with rhs; returns a particular solution or nullopt.
std::optional<std::vector<Elem>> solve_linear(const FieldPtr& F, Mat M, std::vector<Elem> rhs);

/// One nonzero kernel vector of M (free variable set to 1, deterministic
/// choice), or nullopt when M has full column rank.
std::optional<std::vector<Elem>> nullspace_vector(const FieldPtr& F, Mat M);

int matrix_rank(const FieldPtr& F, Mat M);

}  // namespace c2f
