#include "qcompose/walk.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include <Eigen/Eigenvalues>

#include "qcompose/error.hpp"

namespace qcompose {

namespace {

void require_epsilon(Probability epsilon) {
  const double e = epsilon.value();
  if (!(e > 0.0 && e < 0.5)) throw Error(ErrorKind::BadParameter, "epsilon must lie in (0, 1/2)");
}

void require_depth(std::size_t depth, std::size_t minimum) {
  if (depth < minimum) {
    throw Error(ErrorKind::BadParameter, "depth must be >= " + std::to_string(minimum));
  }
}

Probability complement_of(Probability p) {
  return Probability::ratio(p.denominator() - p.numerator(), p.denominator());
}

// BFS 2-colouring; true marks the even side.
std::vector<bool> bipartition(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> colour(n, -1);
  for (Vertex root = 0; root < n; ++root) {
    if (colour[root] >= 0) continue;
    colour[root] = 0;
    std::queue<Vertex> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      Vertex u = frontier.front();
      frontier.pop();
      for (std::size_t e : g.incident(u)) {
        Vertex v = g.other_end(e, u);
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          frontier.push(v);
        } else if (colour[v] == colour[u]) {
          throw Error(ErrorKind::NotBipartite, "graph contains an odd cycle");
        }
      }
    }
  }
  std::vector<bool> even(n);
  for (Vertex v = 0; v < n; ++v) even[v] = colour[v] == 0;
  return even;
}

bool has_star(const EdgeSpace& space, Vertex u) {
  return !space.graph().incident(u).empty() || space.boundary_index(u).has_value();
}

}  // namespace

EdgeSpace::EdgeSpace(WeightedGraph graph) : graph_(std::move(graph)) {
  for (const auto& [v, w] : graph_.boundary()) {
    if (w > 0.0) boundary_vertices_.push_back(v);
  }
}

std::optional<std::size_t> EdgeSpace::boundary_index(Vertex v) const {
  auto it = std::lower_bound(boundary_vertices_.begin(), boundary_vertices_.end(), v);
  if (it == boundary_vertices_.end() || *it != v) return std::nullopt;
  return graph_.edges().size() + static_cast<std::size_t>(it - boundary_vertices_.begin());
}

StateVector star_state(const EdgeSpace& space, Vertex u) {
  const WeightedGraph& g = space.graph();
  if (u >= g.vertex_count()) throw Error(ErrorKind::IndexOutOfRange, "vertex out of range");
  if (!has_star(space, u)) {
    throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(u) + " has no incident edge");
  }
  // Scale by the largest incident weight so tiny or huge weights stay representable.
  double largest = g.boundary_weight(u);
  for (std::size_t e : g.incident(u)) largest = std::max(largest, g.edges()[e].weight);

  std::vector<Amplitude> raw(space.dim(), 0.0);
  for (std::size_t e : g.incident(u)) {
    raw[space.edge_index(e)] = std::sqrt(g.edges()[e].weight / largest);
  }
  if (auto b = space.boundary_index(u)) raw[*b] = std::sqrt(g.boundary_weight(u) / largest);
  return make_state(raw);
}

WalkOperator walk_from_stars(std::size_t dim, const std::vector<Eigen::VectorXcd>& stars,
                             const std::vector<bool>& even) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd proj_even = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd proj_odd = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t u = 0; u < stars.size(); ++u) {
    if (stars[u].size() == 0) continue;
    (even[u] ? proj_even : proj_odd) += stars[u] * stars[u].adjoint();
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd reflect_even = 2.0 * proj_even - id;
  Eigen::MatrixXcd reflect_odd = 2.0 * proj_odd - id;
  UnitaryMatrix u(reflect_odd * reflect_even);
  return WalkOperator{std::move(u), std::move(reflect_odd), std::move(reflect_even)};
}

WalkOperator build_walk_operator(const EdgeSpace& space) {
  const WeightedGraph& g = space.graph();
  const std::vector<bool> even = bipartition(g);
  std::vector<Eigen::VectorXcd> stars(g.vertex_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (has_star(space, u)) stars[u] = star_state(space, u).amplitudes();
  }
  return walk_from_stars(space.dim(), stars, even);
}

PurifierLine purifier_line(Probability p0, Probability epsilon, std::size_t depth) {
  const double p = p0.value();
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::BadParameter, "p0 must lie in (0, 1)");
  require_epsilon(epsilon);
  require_depth(depth, 2);

  const double ratio = p0.inverse_odds();
  std::vector<Edge> edges;
  for (std::size_t l = 1; l < depth; ++l) {
    edges.push_back(Edge{l - 1, l, std::pow(ratio, static_cast<double>(l))});
  }
  const double terminal = std::pow(ratio, static_cast<double>(depth));
  if (!(terminal > 0.0) || !std::isfinite(terminal)) {
    throw Error(ErrorKind::BadParameter, "line weights leave the double range for this p0 and depth");
  }
  std::map<Vertex, double> boundary{{0, 1.0}, {depth - 1, terminal}};
  return PurifierLine{p0, epsilon, depth, WeightedGraph(depth, std::move(edges), std::move(boundary))};
}

double purifier_geometric_sum(Probability epsilon, std::size_t depth) {
  require_epsilon(epsilon);
  const double r = epsilon.odds();
  double sum = 0.0;
  double term = 1.0;
  for (std::size_t l = 1; l < depth; ++l) {
    term *= r;
    sum += term;
  }
  return sum;
}

double purifier_complexity(Probability epsilon, std::size_t depth) {
  require_depth(depth, 2);
  const double w_max = purifier_geometric_sum(epsilon, depth);
  const double r_max = purifier_geometric_sum(epsilon, depth);
  return std::sqrt(w_max * r_max);
}

double purifier_complexity_ceiling(Probability epsilon) {
  require_epsilon(epsilon);
  return 1.0 / (1.0 - epsilon.odds());
}

double perturbation_bound(Probability epsilon, std::size_t depth) {
  require_epsilon(epsilon);
  require_depth(depth, 1);
  return std::pow(epsilon.odds(), static_cast<double>(depth));
}

double terminal_resistance(const PurifierLine& line) {
  const WeightedGraph& g = line.graph;
  std::vector<Edge> edges = g.edges();
  const Vertex ground = g.vertex_count();
  edges.push_back(Edge{line.terminal(), ground, g.boundary_weight(line.terminal())});
  return effective_resistance(WeightedGraph(ground + 1, std::move(edges)), line.entrance(), ground);
}

double stationary_overlap(const WalkOperator& op, const StateVector& initial) {
  if (initial.dim() != op.unitary.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "initial state is not in the walk's edge space");
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op.unitary.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "eigendecomposition did not converge");
  }
  const Eigen::VectorXcd& values = solver.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i) - Amplitude(1.0, 0.0)) <= kEigenOneTolerance) keep.push_back(i);
  }
  if (keep.empty()) return 0.0;

  // Eigenvectors within a degenerate cluster need not be orthogonal; take an
  // orthonormal basis of their span before projecting.
  Eigen::MatrixXcd vectors(values.size(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    vectors.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(keep[c]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(vectors);
  qr.setThreshold(1e-8);
  const Eigen::Index rank = qr.rank();
  const Eigen::MatrixXcd q = Eigen::MatrixXcd(qr.householderQ()).leftCols(rank);
  const double overlap = (q.adjoint() * initial.amplitudes()).squaredNorm();
  return std::clamp(overlap, 0.0, 1.0);
}

WalkOperator coin_line_walk(Probability p0, std::size_t depth) {
  const double p = p0.value();
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::BadParameter, "p0 must lie in [0, 1]");
  require_depth(depth, 1);
  const std::size_t dim = depth + 1;
  const double left = std::sqrt(p);
  const double right = std::sqrt(p0.complement());
  std::vector<Eigen::VectorXcd> stars(depth);
  std::vector<bool> even(depth);
  for (std::size_t k = 0; k < depth; ++k) {
    stars[k] = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    stars[k](static_cast<Eigen::Index>(k)) = left;
    stars[k](static_cast<Eigen::Index>(k + 1)) = right;
    even[k] = k % 2 == 0;
  }
  return walk_from_stars(dim, stars, even);
}

double purifier_statistic(Probability p0, std::size_t depth) {
  return stationary_overlap(coin_line_walk(p0, depth), basis_state(depth + 1, 0));
}

double default_threshold(Probability epsilon, std::size_t depth) {
  require_epsilon(epsilon);
  const double accepting = purifier_statistic(epsilon, depth);
  const double rejecting = purifier_statistic(complement_of(epsilon), depth);
  return 0.5 * (accepting + rejecting);
}

bool decide_purifier(Probability p0, Probability epsilon, std::size_t depth,
                     std::optional<double> threshold) {
  require_epsilon(epsilon);
  require_depth(depth, 2);
  const double p = p0.value();
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::BadParameter, "p0 must lie in [0, 1]");
  if (p > epsilon.value() && p < epsilon.complement()) {
    throw Error(ErrorKind::PromiseViolation, "p0 lies strictly between eps and 1 - eps");
  }
  const double cut = threshold ? *threshold : default_threshold(epsilon, depth);
  return purifier_statistic(p0, depth) > cut;
}

}  // namespace qcompose
