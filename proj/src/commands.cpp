#include "qcompose/commands.hpp"

#include <future>
#include <string>

#include "qcompose/error.hpp"
#include "qcompose/promise.hpp"
#include "qcompose/random.hpp"
#include "qcompose/walk.hpp"

namespace qcompose {

namespace {

std::string describe_bits(const BitString& bits) {
  return bits.size() <= 64 ? bits.to_string() : bits.to_hex();
}

std::vector<BitString> all_balanced(std::size_t m) {
  std::vector<BitString> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != m / 2) continue;
    BitString b(m);
    for (std::size_t i = 0; i < m; ++i) b.set(i, (mask >> (m - 1 - i)) & 1);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

Table cmd_dj(std::size_t m, std::uint64_t seed) {
  if (m < 2 || m > kMaxDjLength || !is_power_of_two(m)) {
    throw Error(ErrorKind::BadDimension, "m must be a power of two in [2, 16384]");
  }
  std::vector<BitString> balanced;
  if (m <= 4) {
    balanced = all_balanced(m);
  } else {
    Rng rng(seed);
    for (int k = 0; k < 6; ++k) {
      BitString b(m);
      const auto perm = rng.permutation(m);
      for (std::size_t i = 0; i < m / 2; ++i) b.set(perm[i]);
      balanced.push_back(std::move(b));
    }
  }
  Table table({"kind", "input", "weight", "accept_probability"});
  const BitString zero(m);
  table.add_row({std::string("constant"), describe_bits(zero), std::int64_t{0}, run_dj(zero)});
  for (const BitString& b : balanced) {
    table.add_row({std::string("balanced"), describe_bits(b),
                   static_cast<std::int64_t>(b.weight()), run_dj(b)});
  }
  return table;
}

Table cmd_compose_fail(std::size_t m, std::optional<std::size_t> max_stop) {
  const ComposedInstance inst = structured_counterexample(m);
  const std::size_t last = max_stop.value_or(m / 2 + 1);
  if (last < 1 || last > 1000000) throw Error(ErrorKind::BadParameter, "max stop must lie in [1, 10^6]");
  Table table({"stop_time", "accept_amplitude_re", "accept_amplitude_im", "accept_probability",
               "exited_mass"});
  auto emit = [&](std::optional<std::size_t> t) {
    const ComposedRunResult r = run_composed_dj_h(inst, t);
    Cell label = t ? Cell(static_cast<std::int64_t>(*t)) : Cell(std::string("FULL"));
    table.add_row({label, r.accept_amplitude.real(), r.accept_amplitude.imag(),
                   r.accept_probability, r.exited_mass});
  };
  for (std::size_t t = 1; t <= last; ++t) emit(t);
  emit(std::nullopt);
  return table;
}

Table cmd_purifier(Probability epsilon, const std::vector<std::size_t>& depths,
                   const std::vector<Probability>& p0s) {
  if (depths.empty() || p0s.empty()) throw Error(ErrorKind::BadParameter, "empty depth or p0 list");
  const double eps = epsilon.value();
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorKind::BadParameter, "epsilon must lie in (0, 1/2)");
  for (std::size_t d : depths) {
    if (d < 2 || d > 256) throw Error(ErrorKind::BadParameter, "depth must lie in [2, 256]");
  }
  for (Probability p : p0s) {
    const double v = p.value();
    if (!(v > 0.0 && v < 1.0)) throw Error(ErrorKind::BadParameter, "p0 must lie in (0, 1)");
    if (v > eps && v < epsilon.complement()) {
      throw Error(ErrorKind::PromiseViolation, "p0 " + p.to_string() + " lies strictly between eps and 1 - eps");
    }
  }

  struct Row {
    double p0, w, r, complexity, perturbation, overlap, threshold;
    std::size_t depth;
    bool accept;
  };
  std::vector<std::future<Row>> jobs;
  for (Probability p0 : p0s) {
    for (std::size_t depth : depths) {
      jobs.push_back(std::async(std::launch::async, [=] {
        const PurifierLine line = purifier_line(p0, epsilon, depth);
        Row row{};
        row.p0 = p0.value();
        row.depth = depth;
        row.w = total_weight(line.graph);
        row.r = effective_resistance(line.graph, line.entrance(), line.terminal());
        row.complexity = purifier_complexity(epsilon, depth);
        row.perturbation = perturbation_bound(epsilon, depth);
        row.overlap = purifier_statistic(p0, depth);
        row.threshold = default_threshold(epsilon, depth);
        row.accept = decide_purifier(p0, epsilon, depth, row.threshold);
        return row;
      }));
    }
  }
  Table table({"p0", "epsilon", "D", "W", "R", "complexity", "perturbation_bound", "overlap",
               "threshold", "decision"});
  for (auto& job : jobs) {
    const Row row = job.get();
    table.add_row({row.p0, eps, static_cast<std::int64_t>(row.depth), row.w, row.r,
                   row.complexity, row.perturbation, row.overlap, row.threshold,
                   std::string(row.accept ? "accept" : "reject")});
  }
  return table;
}

Table cmd_commute(const WeightedGraph& g, Vertex s, Vertex t, std::size_t trials,
                  std::uint64_t seed) {
  if (g.has_boundary()) {
    throw Error(ErrorKind::BoundaryPresent, "commute identity is stated for graphs without boundary edges");
  }
  if (trials < 1) throw Error(ErrorKind::BadParameter, "trials must be >= 1");
  const double w = total_weight(g);
  const double r = effective_resistance(g, s, t);
  const double h_st = hitting_time_exact(g, s, t);
  const double h_ts = hitting_time_exact(g, t, s);
  const MonteCarloEstimate mc_st = hitting_time_mc(g, s, t, seed, trials);
  const MonteCarloEstimate mc_ts = hitting_time_mc(g, t, s, seed + 1, trials);
  Table table({"s", "t", "H_st", "H_ts", "mc_H_st", "mc_H_st_stderr", "mc_H_ts",
               "mc_H_ts_stderr", "W", "R", "two_W_R", "residual"});
  table.add_row({static_cast<std::int64_t>(s), static_cast<std::int64_t>(t), h_st, h_ts,
                 mc_st.mean, mc_st.std_error, mc_ts.mean, mc_ts.std_error, w, r, 2.0 * w * r,
                 commute_identity_residual(g, s, t)});
  return table;
}

Table cmd_costs(const CostProfile& profile) {
  validate_profile(profile);
  Table table({"model", "cost", "note"});
  table.add_row({std::string("classical_avg"), classical_avg_cost(profile), std::string("")});
  table.add_row({std::string("quantum_naive"), quantum_naive_cost(profile), std::string("")});
  table.add_row({std::string("quantum_walk"), quantum_walk_cost(profile),
                 std::string("up to the hidden constant (reported as 1)")});
  return table;
}

Table cmd_majority_vs_purifier(Probability epsilon, const std::vector<double>& deltas) {
  const std::vector<OverheadRow> rows = majority_vs_purifier_table(epsilon, deltas);
  const double ceiling = purifier_complexity_ceiling(epsilon);
  Table table({"delta", "majority_k", "majority_error", "purifier_D", "perturbation_bound",
               "purifier_overhead", "purifier_ceiling"});
  for (const OverheadRow& row : rows) {
    table.add_row({row.delta, static_cast<std::int64_t>(row.majority_k), row.majority_error,
                   static_cast<std::int64_t>(row.purifier_depth), row.perturbation,
                   row.purifier_overhead, ceiling});
  }
  return table;
}

}  // namespace qcompose
