#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcompose/bits.hpp"
#include "qcompose/probability.hpp"
#include "qcompose/promise.hpp"
#include "qcompose/state.hpp"

namespace qcompose {

/// Subroutine usage of an outer algorithm: `weights[j][i]` is the probability
/// (or squared amplitude) that call j goes to subroutine i, with cost T(B_i).
struct CostProfile {
  std::vector<double> subroutine_times;
  double extra_ops = 0.0;  // L
  std::vector<std::vector<double>> weights;

  std::size_t calls() const noexcept { return weights.size(); }  // Q
};

inline constexpr double kRowSumTolerance = 1e-12;

void validate_profile(const CostProfile& profile);

/// sum_j sum_i p_{j,i} T(B_i) + L
double classical_avg_cost(const CostProfile& profile);
/// Q max_i T(B_i) + L
double quantum_naive_cost(const CostProfile& profile);
/// sum_j sum_i q_{j,i} T(B_i) + L, reported with the hidden constant set to 1.
double quantum_walk_cost(const CostProfile& profile);

/// Accept probability of the one-query Deutsch-Jozsa circuit on x.
double run_dj(const BitString& x);

struct ComposedRunResult {
  std::optional<std::size_t> stop_time;  // nullopt = run to completion
  Amplitude accept_amplitude;
  double accept_probability = 0.0;
  double exited_mass = 0.0;
};

/// Deutsch-Jozsa over the blocks with each query replaced by the Las Vegas h
/// subroutine paused after `stop_time` steps. Branch i contributes
/// (-1)^{h(block_i)} sqrt(P_exit,i(t)) / sqrt(arity); amplitude still inside
/// the subroutine never reaches the final transform.
ComposedRunResult run_composed_dj_h(const ComposedInstance& inst,
                                    std::optional<std::size_t> stop_time);

struct OverheadRow {
  double delta = 0.0;
  int majority_k = 0;
  double majority_error = 0.0;
  std::size_t purifier_depth = 0;
  double perturbation = 0.0;
  double purifier_overhead = 0.0;
};

/// Smallest odd k with majority_vote_error(k, eps) <= delta.
int minimal_majority_votes(double epsilon, double delta);
/// Smallest D >= 2 with perturbation_bound(eps, D) <= delta.
std::size_t minimal_purifier_depth(Probability epsilon, double delta);

/// One row per target delta, sorted by delta descending.
std::vector<OverheadRow> majority_vs_purifier_table(Probability epsilon,
                                                    std::span<const double> deltas);

}  // namespace qcompose
