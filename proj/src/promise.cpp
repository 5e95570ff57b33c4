#include "qcompose/promise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcompose/error.hpp"
#include "qcompose/random.hpp"

namespace qcompose {

namespace {

[[noreturn]] void promise_violation(const std::string& what) {
  throw Error(ErrorKind::PromiseViolation, what);
}

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

HInput HInput::split(const BitString& joined) {
  if (joined.size() % 2 != 0) {
    throw Error(ErrorKind::BadArity, "h input must have even length 2m");
  }
  const std::size_t m = joined.size() / 2;
  return HInput{joined.slice(0, m), joined.slice(m, m)};
}

BitString ComposedInstance::induced() const {
  BitString out(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) out.set(i, h_eval(blocks[i]) == 1);
  return out;
}

void validate_g_input(const BitString& x) {
  const std::size_t m = x.size();
  if (m == 0 || m % 2 != 0) promise_violation("g input length must be even and positive");
  const std::size_t w = x.weight();
  if (w != 0 && w != m / 2) {
    promise_violation("g input weight " + std::to_string(w) + " not in {0, " +
                      std::to_string(m / 2) + "}");
  }
}

void validate_h_input(const HInput& z) {
  const std::size_t m = z.left.size();
  if (m == 0 || z.right.size() != m) promise_violation("h halves must have equal positive length");
  const bool left_zero = z.left.is_zero();
  const bool right_zero = z.right.is_zero();
  if (left_zero == right_zero) promise_violation("exactly one h half must be all-zero");
  const std::size_t w = left_zero ? z.right.weight() : z.left.weight();
  if (2 * w < m) {
    promise_violation("nonzero h half has weight " + std::to_string(w) + " < m/2");
  }
}

void validate_composed(const ComposedInstance& inst) {
  if (inst.blocks.empty()) promise_violation("composed instance has no blocks");
  const std::size_t m = inst.inner_length();
  for (const HInput& block : inst.blocks) {
    if (block.half_length() != m) promise_violation("blocks have different inner lengths");
    validate_h_input(block);
  }
  validate_g_input(inst.induced());
}

int g_eval(const BitString& x) {
  validate_g_input(x);
  return x.is_zero() ? 1 : 0;
}

int h_eval(const HInput& z) {
  validate_h_input(z);
  return z.left.is_zero() ? 1 : 0;
}

ComposedInstance structured_counterexample(std::size_t m) {
  if (m < 4 || m % 4 != 0) {
    throw Error(ErrorKind::BadArity, "structured counterexample needs m a positive multiple of 4");
  }
  auto prefix_ones = [m](std::size_t w) {
    BitString s(m);
    for (std::size_t i = 0; i < w; ++i) s.set(i);
    return s;
  };
  const BitString zero(m);
  ComposedInstance inst;
  inst.blocks = {
      HInput{zero, prefix_ones(3 * m / 4)},
      HInput{prefix_ones(m), zero},
      HInput{zero, prefix_ones(m / 2)},
      HInput{prefix_ones(3 * m / 4), zero},
  };
  return inst;
}

LasVegasTrace las_vegas_h(const HInput& z, std::uint64_t seed) {
  validate_h_input(z);
  const std::size_t m = z.half_length();
  Rng rng(seed);
  const std::vector<std::size_t> order = rng.permutation(m);
  LasVegasTrace trace;
  for (std::size_t j : order) {
    ++trace.steps;
    trace.queries += 2;
    if (z.left[j]) {
      trace.answer = 0;
      return trace;
    }
    if (z.right[j]) {
      trace.answer = 1;
      return trace;
    }
  }
  // Unreachable under the promise: the nonzero half has at least one 1.
  throw Error(ErrorKind::PromiseViolation, "no 1 found in either half");
}

double h_first_step_exit_prob(const HInput& z) {
  validate_h_input(z);
  return static_cast<double>(z.nonzero_weight()) / static_cast<double>(z.half_length());
}

std::vector<double> h_stop_distribution_enumerated(const HInput& z) {
  validate_h_input(z);
  const std::size_t m = z.half_length();
  if (m > 10) throw Error(ErrorKind::BadParameter, "enumeration limited to m <= 10");
  const BitString& half = z.left.is_zero() ? z.right : z.left;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::uint64_t> counts(m, 0);
  std::uint64_t total = 0;
  do {
    std::size_t k = 0;
    while (!half[order[k]]) ++k;
    ++counts[k];
    ++total;
  } while (std::next_permutation(order.begin(), order.end()));
  const std::size_t last = m - half.weight() + 1;
  std::vector<double> dist(last);
  for (std::size_t k = 0; k < last; ++k) {
    dist[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  }
  return dist;
}

std::vector<double> h_stop_distribution_closed_form(const HInput& z) {
  validate_h_input(z);
  const double m = static_cast<double>(z.half_length());
  const double w = static_cast<double>(z.nonzero_weight());
  const std::size_t last = z.half_length() - z.nonzero_weight() + 1;
  std::vector<double> dist(last);
  for (std::size_t k = 1; k <= last; ++k) {
    const double misses = static_cast<double>(k - 1);
    const double log_none = log_choose(m - w, misses) - log_choose(m, misses);
    dist[k - 1] = std::exp(log_none) * w / (m - misses);
  }
  return dist;
}

double h_exit_within(const HInput& z, std::size_t steps) {
  validate_h_input(z);
  const std::vector<double> dist = z.half_length() <= kEnumerationLimit
                                       ? h_stop_distribution_enumerated(z)
                                       : h_stop_distribution_closed_form(z);
  if (steps >= dist.size()) return 1.0;
  double p = 0.0;
  for (std::size_t k = 0; k < steps; ++k) p += dist[k];
  return std::min(p, 1.0);
}

double majority_vote_error(int k, double p_err) {
  if (k < 1 || k % 2 == 0) {
    throw Error(ErrorKind::BadRepetitionCount, "repetition count must be odd and positive");
  }
  if (!(p_err >= 0.0 && p_err < 0.5)) {
    throw Error(ErrorKind::BadParameter, "per-vote error must lie in [0, 1/2)");
  }
  if (p_err == 0.0) return 0.0;
  if (k == 1) return p_err;
  const double log_p = std::log(p_err);
  const double log_q = std::log1p(-p_err);
  double sum = 0.0;
  for (int j = k / 2 + 1; j <= k; ++j) {
    sum += std::exp(log_choose(k, j) + j * log_p + (k - j) * log_q);
  }
  return std::min(sum, 1.0);
}

}  // namespace qcompose
