#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcompose/bits.hpp"

namespace qcompose {

/// Input to h: two halves of equal length m. Exactly one half is all-zero and
/// the other has weight >= m/2.
struct HInput {
  BitString left;
  BitString right;

  std::size_t half_length() const noexcept { return left.size(); }
  /// Weight of whichever half is nonzero.
  std::size_t nonzero_weight() const noexcept { return left.weight() + right.weight(); }
  /// left followed by right, i.e. the 2m-bit string x_1..x_{2m}.
  BitString joined() const { return left.concat(right); }
  static HInput split(const BitString& joined);
};

/// Input to g∘h: one HInput per outer position.
struct ComposedInstance {
  std::vector<HInput> blocks;

  std::size_t arity() const noexcept { return blocks.size(); }
  std::size_t inner_length() const noexcept {
    return blocks.empty() ? 0 : blocks.front().half_length();
  }
  /// (h(block_1), ..., h(block_arity)); requires every block to be valid.
  BitString induced() const;
};

struct LasVegasTrace {
  int answer = 0;
  std::size_t queries = 0;
  std::size_t steps = 0;
};

void validate_g_input(const BitString& x);
void validate_h_input(const HInput& z);
void validate_composed(const ComposedInstance& inst);

/// 1 iff x is all-zero; x must have weight 0 or m/2 (m even).
int g_eval(const BitString& x);
/// 1 iff the left half is all-zero.
int h_eval(const HInput& z);

/// Four blocks with (left, right) weights (0, 3m/4), (m, 0), (0, m/2),
/// (3m/4, 0); the ones occupy the lowest positions of each nonzero half.
ComposedInstance structured_counterexample(std::size_t m);

/// Zero-error sampler for h. Each step draws an unqueried index j (uniformly,
/// from a seeded permutation of [m]) and queries x_j and x_{m+j}; it stops
/// after the first step that sees a 1.
LasVegasTrace las_vegas_h(const HInput& z, std::uint64_t seed);

/// Probability that las_vegas_h finishes in its first step: weight / m.
double h_first_step_exit_prob(const HInput& z);

/// P(las_vegas_h stops within `steps` steps). Exact enumeration over all
/// sampling orders for m <= kEnumerationLimit, hypergeometric tail above.
double h_exit_within(const HInput& z, std::size_t steps);

inline constexpr std::size_t kEnumerationLimit = 8;

/// Distribution of the stopping step, entry k-1 = P(stop at step k), computed
/// by walking all m! orderings of the index draws. m must be <= 10.
std::vector<double> h_stop_distribution_enumerated(const HInput& z);
/// Same distribution from the closed form
/// P(stop at k) = C(m-w, k-1) / C(m, k-1) * w / (m-k+1).
std::vector<double> h_stop_distribution_closed_form(const HInput& z);

/// Probability that a majority of k independent votes, each wrong with
/// probability p_err, is wrong. k must be odd and positive.
double majority_vote_error(int k, double p_err);

}  // namespace qcompose
