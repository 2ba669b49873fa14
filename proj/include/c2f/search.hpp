#pragma once

#include "c2f/quadform.hpp"

#include <optional>

// Exact isotropy-witness search.
//
// Two engines cooperate:
//   - a directed pass that assigns small vectors on one or two blocks and
//     closes the remaining block with an exact Artin-Schreier root
//     (wp_solve), in a fixed deterministic order;
//   - a brute kernel scanning the monomial candidate space in the canonical
//     graded order. The kernel has a serial reference implementation and an
//     OpenMP-parallel one; both return the least candidate index that is a
//     witness, so the result is independent of the schedule.
//
// Every returned witness is verified exactly before it leaves this module.

namespace c2f {

struct SearchConfig {
    int monomial_deg = 2;            // per-variable exponent cap for brute candidates
    long long max_candidates = 1 << 22;
    bool use_directed = true;
    bool use_brute = true;
    bool parallel = true;
    std::uint64_t finite_cap = 1ULL << 24;  // |F|^dim cap for exhaustive finite scans
};

std::optional<std::vector<Elem>> find_isotropy_witness(const QuadraticForm& q,
                                                       const SearchConfig& cfg = {});

/// Brute kernels over the monomial candidate space. Candidate index 0 is the
/// zero vector and is skipped; kernels return the least witness index decoded
/// to coordinates.
std::optional<std::vector<Elem>> brute_witness_serial(const QuadraticForm& q, int deg,
                                                      long long cap);
std::optional<std::vector<Elem>> brute_witness_parallel(const QuadraticForm& q, int deg,
                                                        long long cap);

/// Exhaustive scans over all coordinate vectors of a finite field.
std::optional<std::vector<Elem>> finite_witness_serial(const QuadraticForm& q, std::uint64_t cap);
std::optional<std::vector<Elem>> finite_witness_parallel(const QuadraticForm& q, std::uint64_t cap);

/// Number of brute candidates for a form/degree combination (monomial space).
long long brute_candidate_count(const QuadraticForm& q, int deg);

}  // namespace c2f
