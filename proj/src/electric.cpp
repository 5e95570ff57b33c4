#include "qcompose/electric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "qcompose/error.hpp"
#include "qcompose/random.hpp"

namespace qcompose {

namespace {

void require_vertex(const WeightedGraph& g, Vertex v) {
  if (v >= g.vertex_count()) {
    throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
  }
}

// Dense local numbering of a component with one vertex removed.
struct Reduced {
  std::vector<Vertex> vertices;
  std::vector<Eigen::Index> index;  // -1 when not an unknown
};

Reduced reduce(const WeightedGraph& g, const std::vector<Vertex>& comp, Vertex removed) {
  Reduced r;
  r.index.assign(g.vertex_count(), -1);
  for (Vertex v : comp) {
    if (v == removed) continue;
    r.index[v] = static_cast<Eigen::Index>(r.vertices.size());
    r.vertices.push_back(v);
  }
  return r;
}

// Solves the grounded Laplacian system (diag(C 1 + leak) - C) x = b where C
// holds the non-negative conductances between unknowns and `leak` the
// conductance from each unknown to the grounded vertex. Elimination keeps the
// Laplacian form: Schur-complement conductances, leaks and right-hand sides
// are updated by sums of products of non-negative numbers and every pivot is
// re-formed as a row sum, so nothing is ever subtracted. For b >= 0 this keeps
// componentwise relative accuracy even when weights span many orders of
// magnitude, where a pivoted LU loses every digit.
Eigen::VectorXd solve_grounded(Eigen::MatrixXd c, Eigen::VectorXd leak, Eigen::VectorXd b) {
  const Eigen::Index k = c.rows();
  Eigen::VectorXd pivot(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    double p = leak(i);
    for (Eigen::Index j = i + 1; j < k; ++j) p += c(i, j);
    if (!(p > 0.0)) throw Error(ErrorKind::NumericalFailure, "vertex has no path to the ground");
    pivot(i) = p;
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double cji = c(j, i);
      if (cji == 0.0) continue;
      const double share = cji / p;
      leak(j) += share * leak(i);
      b(j) += share * b(i);
      for (Eigen::Index l = i + 1; l < k; ++l) {
        if (l != j && c(i, l) != 0.0) c(j, l) += share * c(i, l);
      }
    }
  }
  Eigen::VectorXd x(k);
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    double acc = b(i);
    for (Eigen::Index j = i + 1; j < k; ++j) acc += c(i, j) * x(j);
    x(i) = acc / pivot(i);
  }
  if (!x.allFinite()) throw Error(ErrorKind::NumericalFailure, "Laplacian solve failed");
  return x;
}

// Conductances among the unknowns of `r` and from each unknown to `ground`.
void assemble(const WeightedGraph& g, const Reduced& r, Eigen::MatrixXd& c, Eigen::VectorXd& leak) {
  const auto k = static_cast<Eigen::Index>(r.vertices.size());
  c = Eigen::MatrixXd::Zero(k, k);
  leak = Eigen::VectorXd::Zero(k);
  for (const Edge& e : g.edges()) {
    const Eigen::Index a = r.index[e.u];
    const Eigen::Index b = r.index[e.v];
    if (a >= 0 && b >= 0) {
      c(a, b) += e.weight;
      c(b, a) += e.weight;
    } else if (a >= 0 && b < 0) {
      leak(a) += e.weight;
    } else if (b >= 0 && a < 0) {
      leak(b) += e.weight;
    }
  }
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges,
                             std::map<Vertex, double> boundary)
    : n_(n), edges_(std::move(edges)), boundary_(std::move(boundary)), incident_(n) {
  if (n_ == 0) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= n_ || e.v >= n_) throw Error(ErrorKind::InvalidGraph, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorKind::InvalidGraph, "self-loops are not allowed");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::InvalidGraph, "edge weights must be finite and positive");
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw Error(ErrorKind::InvalidGraph, "parallel edges are not allowed");
    }
    incident_[e.u].push_back(i);
    incident_[e.v].push_back(i);
  }
  for (const auto& [v, w] : boundary_) {
    if (v >= n_) throw Error(ErrorKind::InvalidGraph, "boundary vertex out of range");
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::InvalidGraph, "boundary weights must be finite and non-negative");
    }
  }
}

double WeightedGraph::boundary_weight(Vertex v) const {
  auto it = boundary_.find(v);
  return it == boundary_.end() ? 0.0 : it->second;
}

bool WeightedGraph::has_boundary() const {
  for (const auto& [v, w] : boundary_) {
    if (w > 0.0) return true;
  }
  return false;
}

Vertex WeightedGraph::other_end(std::size_t edge, Vertex v) const {
  const Edge& e = edges_.at(edge);
  return e.u == v ? e.v : e.u;
}

double WeightedGraph::degree(Vertex v) const {
  double d = 0.0;
  for (std::size_t e : incident_.at(v)) d += edges_[e].weight;
  return d;
}

std::vector<Vertex> WeightedGraph::component(Vertex v) const {
  std::vector<bool> seen(n_, false);
  std::queue<Vertex> frontier;
  seen.at(v) = true;
  frontier.push(v);
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop();
    for (std::size_t e : incident_[u]) {
      Vertex w = other_end(e, u);
      if (!seen[w]) {
        seen[w] = true;
        frontier.push(w);
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex u = 0; u < n_; ++u) {
    if (seen[u]) out.push_back(u);
  }
  return out;
}

double total_weight(const WeightedGraph& g) {
  if (g.edges().empty()) throw Error(ErrorKind::EmptyGraph, "graph has no internal edges");
  double w = 0.0;
  for (const Edge& e : g.edges()) w += e.weight;
  return w;
}

double flow_energy(const WeightedGraph& g, const Flow& flow) {
  double energy = 0.0;
  for (const Edge& e : g.edges()) {
    const double th = flow.at(e.u, e.v);
    energy += th * th / e.weight;
  }
  return energy;
}

Flow min_energy_flow(const WeightedGraph& g, Vertex s, Vertex t) {
  require_vertex(g, s);
  require_vertex(g, t);
  if (s == t) throw Error(ErrorKind::SameVertex, "source and sink coincide");
  const std::vector<Vertex> comp = g.component(s);
  if (!std::binary_search(comp.begin(), comp.end(), t)) {
    throw Error(ErrorKind::Disconnected, "sink not reachable from source");
  }

  // Ground the sink and solve L phi = e_s on the rest of the component.
  const Reduced r = reduce(g, comp, t);
  Eigen::MatrixXd c;
  Eigen::VectorXd leak;
  assemble(g, r, c, leak);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(r.vertices.size()));
  rhs(r.index[s]) = 1.0;
  const Eigen::VectorXd phi = solve_grounded(std::move(c), std::move(leak), std::move(rhs));
  auto potential = [&](Vertex v) { return r.index[v] >= 0 ? phi(r.index[v]) : 0.0; };

  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Flow flow;
  flow.source = s;
  flow.sink = t;
  flow.theta = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (!std::binary_search(comp.begin(), comp.end(), e.u)) continue;
    const double th = e.weight * (potential(e.u) - potential(e.v));
    flow.theta(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = th;
    flow.theta(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = -th;
  }
  // For a unit current the energy equals the potential drop phi(s) - phi(t),
  // which is accurate even where the edge-wise differences cancel.
  flow.energy = phi(r.index[s]);
  return flow;
}

double effective_resistance(const WeightedGraph& g, Vertex s, Vertex t) {
  return min_energy_flow(g, s, t).energy;
}

HittingTimes hitting_times(const WeightedGraph& g, Vertex t) {
  require_vertex(g, t);
  const std::vector<Vertex> comp = g.component(t);
  const Reduced r = reduce(g, comp, t);
  const auto k = static_cast<Eigen::Index>(r.vertices.size());

  // deg(u) h(u) - sum_v w(u,v) h(v) = deg(u) for u != t, h(t) = 0.
  Eigen::MatrixXd c;
  Eigen::VectorXd leak;
  assemble(g, r, c, leak);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) rhs(i) = g.degree(r.vertices[static_cast<std::size_t>(i)]);
  HittingTimes out;
  out.target = t;
  out.values.assign(g.vertex_count(), 0.0);
  if (k > 0) {
    const Eigen::VectorXd h = solve_grounded(std::move(c), std::move(leak), std::move(rhs));
    for (Eigen::Index i = 0; i < k; ++i) out.values[r.vertices[static_cast<std::size_t>(i)]] = h(i);
  }
  return out;
}

double hitting_time_exact(const WeightedGraph& g, Vertex u, Vertex t) {
  require_vertex(g, u);
  require_vertex(g, t);
  if (u == t) return 0.0;
  const std::vector<Vertex> comp = g.component(t);
  if (!std::binary_search(comp.begin(), comp.end(), u)) {
    throw Error(ErrorKind::Disconnected, "target not reachable from start");
  }
  return hitting_times(g, t).values[u];
}

MonteCarloEstimate hitting_time_mc(const WeightedGraph& g, Vertex u, Vertex t,
                                   std::uint64_t seed, std::size_t trials) {
  require_vertex(g, u);
  require_vertex(g, t);
  if (trials < 1) throw Error(ErrorKind::BadParameter, "trials must be >= 1");
  const std::vector<Vertex> comp = g.component(t);
  if (!std::binary_search(comp.begin(), comp.end(), u)) {
    throw Error(ErrorKind::Disconnected, "target not reachable from start");
  }

  // Cumulative weights per vertex for inverse-CDF neighbour sampling.
  std::vector<std::vector<double>> cumulative(g.vertex_count());
  for (Vertex v : comp) {
    double acc = 0.0;
    for (std::size_t e : g.incident(v)) {
      acc += g.edges()[e].weight;
      cumulative[v].push_back(acc);
    }
  }

  Rng rng(seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t trial = 1; trial <= trials; ++trial) {
    Vertex at = u;
    std::uint64_t steps = 0;
    while (at != t) {
      const std::vector<double>& cum = cumulative[at];
      const double x = rng.uniform() * cum.back();
      std::size_t pick = static_cast<std::size_t>(
          std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
      if (pick == cum.size()) pick = cum.size() - 1;
      at = g.other_end(g.incident(at)[pick], at);
      ++steps;
    }
    const double x = static_cast<double>(steps);
    const double delta = x - mean;
    mean += delta / static_cast<double>(trial);
    m2 += delta * (x - mean);
  }
  MonteCarloEstimate est;
  est.mean = mean;
  if (trials > 1) {
    const double var = m2 / static_cast<double>(trials - 1);
    est.std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return est;
}

double commute_identity_residual(const WeightedGraph& g, Vertex s, Vertex t) {
  if (g.has_boundary()) {
    throw Error(ErrorKind::BoundaryPresent, "commute identity is stated for graphs without boundary edges");
  }
  const double resistance = effective_resistance(g, s, t);
  const double two_wr = 2.0 * total_weight(g) * resistance;
  const double commute = hitting_time_exact(g, s, t) + hitting_time_exact(g, t, s);
  return std::abs(commute - two_wr) / std::max(1.0, two_wr);
}

}  // namespace qcompose
