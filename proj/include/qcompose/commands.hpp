#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcompose/composition.hpp"
#include "qcompose/electric.hpp"
#include "qcompose/probability.hpp"
#include "qcompose/table.hpp"

namespace qcompose {

inline constexpr std::size_t kMaxDjLength = std::size_t{1} << 14;

// Experiment drivers behind the CLI subcommands. Each validates its
// parameters before computing and returns the full table; nothing is written
// until the caller renders it.

/// Accept probability for 0^m and a sample of balanced inputs (all of them
/// when there are at most 8, otherwise 6 seeded draws).
Table cmd_dj(std::size_t m, std::uint64_t seed);

/// Structured counterexample with stop times 1..max_stop then FULL.
/// max_stop defaults to m/2 + 1, the longest possible run.
Table cmd_compose_fail(std::size_t m, std::optional<std::size_t> max_stop);

/// One row per (p0, D), p0 outer and D inner, in the order given.
Table cmd_purifier(Probability epsilon, const std::vector<std::size_t>& depths,
                   const std::vector<Probability>& p0s);

Table cmd_commute(const WeightedGraph& g, Vertex s, Vertex t, std::size_t trials,
                  std::uint64_t seed);

Table cmd_costs(const CostProfile& profile);

Table cmd_majority_vs_purifier(Probability epsilon, const std::vector<double>& deltas);

}  // namespace qcompose
