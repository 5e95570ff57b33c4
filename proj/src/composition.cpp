#include "qcompose/composition.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "qcompose/error.hpp"
#include "qcompose/walk.hpp"

namespace qcompose {

namespace {

[[noreturn]] void invalid_profile(const std::string& what) {
  throw Error(ErrorKind::InvalidProfile, what);
}

double max_time(const CostProfile& profile) {
  return *std::max_element(profile.subroutine_times.begin(), profile.subroutine_times.end());
}

// Each row is a convex combination of the T(B_i), so it is capped at the
// maximum; this keeps naive >= average exact under rounding.
double expected_cost(const CostProfile& profile) {
  validate_profile(profile);
  const double ceiling = max_time(profile);
  double total = 0.0;
  for (const auto& row : profile.weights) {
    double r = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) r += row[i] * profile.subroutine_times[i];
    total += std::min(r, ceiling);
  }
  return total + profile.extra_ops;
}

}  // namespace

void validate_profile(const CostProfile& profile) {
  const std::size_t n = profile.subroutine_times.size();
  if (n == 0) invalid_profile("profile needs at least one subroutine");
  if (profile.weights.empty()) invalid_profile("profile needs at least one call (Q >= 1)");
  for (double t : profile.subroutine_times) {
    if (!(t >= 0.0) || !std::isfinite(t)) invalid_profile("subroutine times must be finite and >= 0");
  }
  if (!(profile.extra_ops >= 0.0) || !std::isfinite(profile.extra_ops)) {
    invalid_profile("L must be finite and >= 0");
  }
  for (std::size_t j = 0; j < profile.weights.size(); ++j) {
    const auto& row = profile.weights[j];
    if (row.size() != n) invalid_profile("weight row " + std::to_string(j) + " has wrong length");
    double sum = 0.0;
    for (double w : row) {
      if (!(w >= 0.0) || !std::isfinite(w)) invalid_profile("weights must be finite and >= 0");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      invalid_profile("weight row " + std::to_string(j) + " does not sum to 1");
    }
  }
}

double classical_avg_cost(const CostProfile& profile) { return expected_cost(profile); }

double quantum_walk_cost(const CostProfile& profile) { return expected_cost(profile); }

double quantum_naive_cost(const CostProfile& profile) {
  validate_profile(profile);
  // Summed call by call in the same order as expected_cost.
  const double ceiling = max_time(profile);
  double total = 0.0;
  for (std::size_t j = 0; j < profile.calls(); ++j) total += ceiling;
  return total + profile.extra_ops;
}

double run_dj(const BitString& x) {
  validate_g_input(x);
  if (!is_power_of_two(x.size())) {
    throw Error(ErrorKind::BadDimension, "Deutsch-Jozsa needs m a power of two");
  }
  StateVector state = apply_uniform_transform(basis_state(x.size(), 0));
  state = apply_phase_oracle(state, x);
  state = apply_uniform_transform(state);
  return basis_probability(state, 0);
}

ComposedRunResult run_composed_dj_h(const ComposedInstance& inst,
                                    std::optional<std::size_t> stop_time) {
  validate_composed(inst);
  const std::size_t arity = inst.arity();
  if (!is_power_of_two(arity) || arity < 2) {
    throw Error(ErrorKind::BadDimension, "outer arity must be a power of two >= 2");
  }
  if (stop_time && *stop_time == 0) {
    throw Error(ErrorKind::BadParameter, "stop time must be positive");
  }
  double amplitude = 0.0;
  double exited = 0.0;
  for (const HInput& block : inst.blocks) {
    const double p_exit = stop_time ? h_exit_within(block, *stop_time) : 1.0;
    const double sign = h_eval(block) == 1 ? -1.0 : 1.0;
    amplitude += sign * std::sqrt(p_exit);
    exited += p_exit;
  }
  const double m = static_cast<double>(arity);
  ComposedRunResult result;
  result.stop_time = stop_time;
  result.accept_amplitude = Amplitude(amplitude / m, 0.0);
  result.accept_probability = std::norm(result.accept_amplitude);
  result.exited_mass = stop_time ? exited / m : 1.0;
  return result;
}

int minimal_majority_votes(double epsilon, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw Error(ErrorKind::BadParameter, "delta must lie in (0, 1/2)");
  if (!(epsilon >= 0.0 && epsilon < 0.5)) throw Error(ErrorKind::BadParameter, "epsilon must lie in [0, 1/2)");
  constexpr int kMaxVotes = 1 << 20;
  for (int k = 1; k <= kMaxVotes; k += 2) {
    if (majority_vote_error(k, epsilon) <= delta) return k;
  }
  throw Error(ErrorKind::NumericalFailure, "majority vote search exceeded 2^20 votes");
}

std::size_t minimal_purifier_depth(Probability epsilon, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw Error(ErrorKind::BadParameter, "delta must lie in (0, 1/2)");
  // D = 1 has no internal edge, so the line needs at least two vertices.
  std::size_t depth = 2;
  while (perturbation_bound(epsilon, depth) > delta) {
    if (++depth > 100000) throw Error(ErrorKind::NumericalFailure, "purifier depth search diverged");
  }
  return depth;
}

std::vector<OverheadRow> majority_vs_purifier_table(Probability epsilon,
                                                    std::span<const double> deltas) {
  if (deltas.empty()) throw Error(ErrorKind::BadParameter, "no target perturbations given");
  const double eps = epsilon.value();
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorKind::BadParameter, "epsilon must lie in (0, 1/2)");
  for (double d : deltas) {
    if (!(d > 0.0 && d < 0.5)) throw Error(ErrorKind::BadParameter, "delta must lie in (0, 1/2)");
  }

  std::vector<std::future<OverheadRow>> jobs;
  for (double delta : deltas) {
    jobs.push_back(std::async(std::launch::async, [epsilon, eps, delta] {
      OverheadRow row;
      row.delta = delta;
      row.majority_k = minimal_majority_votes(eps, delta);
      row.majority_error = majority_vote_error(row.majority_k, eps);
      row.purifier_depth = minimal_purifier_depth(epsilon, delta);
      row.perturbation = perturbation_bound(epsilon, row.purifier_depth);
      row.purifier_overhead = purifier_complexity(epsilon, row.purifier_depth);
      return row;
    }));
  }
  std::vector<OverheadRow> rows;
  for (auto& job : jobs) rows.push_back(job.get());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const OverheadRow& a, const OverheadRow& b) { return a.delta > b.delta; });
  return rows;
}

}  // namespace qcompose
