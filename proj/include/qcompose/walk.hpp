#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qcompose/electric.hpp"
#include "qcompose/probability.hpp"
#include "qcompose/state.hpp"

namespace qcompose {

/// Hilbert space spanned by one basis vector per internal edge followed by
/// one per boundary edge (ascending vertex order, zero weights skipped).
class EdgeSpace {
 public:
  explicit EdgeSpace(WeightedGraph graph);

  const WeightedGraph& graph() const noexcept { return graph_; }
  std::size_t dim() const noexcept { return graph_.edges().size() + boundary_vertices_.size(); }
  /// Basis index of internal edge i (same as its position in graph().edges()).
  std::size_t edge_index(std::size_t i) const noexcept { return i; }
  /// Basis index of the boundary edge at v, if v has one.
  std::optional<std::size_t> boundary_index(Vertex v) const;

 private:
  WeightedGraph graph_;
  std::vector<Vertex> boundary_vertices_;
};

struct WalkOperator {
  UnitaryMatrix unitary;
  Eigen::MatrixXcd reflect_odd;   // 2 Pi_odd - I
  Eigen::MatrixXcd reflect_even;  // 2 Pi_even - I; applied first
};

/// Normalised sum of sqrt(w) e over the edges (internal and boundary) at u.
StateVector star_state(const EdgeSpace& space, Vertex u);

/// R_odd * R_even, where R_side reflects through the span of the star states
/// of the vertices on that side of the bipartition. Sides are the parity of
/// the BFS depth from the smallest vertex of each component (vertex 0 is even).
WalkOperator build_walk_operator(const EdgeSpace& space);

/// Walk operator assembled from per-vertex star states in an explicit basis.
/// `stars[u]` holds the (already normalised) star of u, `even[u]` its side.
WalkOperator walk_from_stars(std::size_t dim, const std::vector<Eigen::VectorXcd>& stars,
                             const std::vector<bool>& even);

struct PurifierLine {
  Probability p0;
  Probability epsilon;
  std::size_t depth = 0;
  WeightedGraph graph;

  Vertex entrance() const noexcept { return 0; }
  Vertex terminal() const noexcept { return depth - 1; }
};

/// Path v_1..v_D (vertices 0..D-1) with edge l of weight ((1-p0)/p0)^l,
/// entrance boundary weight 1 at v_1 and terminal boundary ((1-p0)/p0)^D at v_D.
PurifierLine purifier_line(Probability p0, Probability epsilon, std::size_t depth);

/// sum_{l=1}^{D-1} (eps/(1-eps))^l.
double purifier_geometric_sum(Probability epsilon, std::size_t depth);

/// sqrt(max W over the rejecting side * max R over the accepting side); both
/// maxima equal purifier_geometric_sum.
double purifier_complexity(Probability epsilon, std::size_t depth);

/// 1 / (1 - eps/(1-eps)), the depth-independent ceiling on the complexity.
double purifier_complexity_ceiling(Probability epsilon);

/// (eps/(1-eps))^D, the terminal boundary weight ceiling on the rejecting side.
double perturbation_bound(Probability epsilon, std::size_t depth);

/// Resistance from v_1 out through the terminal boundary edge (treated as an
/// edge to an extra grounded vertex); grows like 2^Theta(D) on the rejecting side.
double terminal_resistance(const PurifierLine& line);

inline constexpr double kEigenOneTolerance = 1e-8;

/// Squared norm of the projection of `initial` onto the eigenvalue-1
/// eigenspace of the walk unitary.
double stationary_overlap(const WalkOperator& op, const StateVector& initial);

/// Walk on the purifier line built directly from the coin state
/// sqrt(p0) e_l + sqrt(1-p0) e_{l+1}; basis e_0 (entrance) .. e_D (terminal).
/// Well defined for every p0 in [0, 1].
WalkOperator coin_line_walk(Probability p0, std::size_t depth);

/// stationary_overlap of coin_line_walk(p0, D) from the entrance edge e_0.
double purifier_statistic(Probability p0, std::size_t depth);

/// Midpoint of purifier_statistic at p0 = eps and p0 = 1 - eps.
double default_threshold(Probability epsilon, std::size_t depth);

/// true = accept (p0 <= eps side). p0 must satisfy the promise.
bool decide_purifier(Probability p0, Probability epsilon, std::size_t depth,
                     std::optional<double> threshold = std::nullopt);

}  // namespace qcompose
