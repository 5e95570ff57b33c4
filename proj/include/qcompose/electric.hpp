#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace qcompose {

using Vertex = std::size_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 0.0;
};

/// Undirected graph with positive edge weights. Boundary edges hang off a
/// single vertex; they carry a weight but are not members of the edge set.
class WeightedGraph {
 public:
  WeightedGraph(std::size_t n, std::vector<Edge> edges, std::map<Vertex, double> boundary = {});

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::map<Vertex, double>& boundary() const noexcept { return boundary_; }
  double boundary_weight(Vertex v) const;
  bool has_boundary() const;

  /// Indices into edges() of the internal edges at v.
  const std::vector<std::size_t>& incident(Vertex v) const { return incident_.at(v); }
  Vertex other_end(std::size_t edge, Vertex v) const;
  /// Sum of internal edge weights at v.
  double degree(Vertex v) const;

  /// Vertices reachable from v through internal edges, ascending.
  std::vector<Vertex> component(Vertex v) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::map<Vertex, double> boundary_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Antisymmetric edge function shipping one unit from source to sink.
struct Flow {
  Vertex source = 0;
  Vertex sink = 0;
  Eigen::MatrixXd theta;  // theta(u, v) = -theta(v, u)
  double energy = 0.0;

  double at(Vertex u, Vertex v) const {
    return theta(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
  }
};

struct HittingTimes {
  Vertex target = 0;
  std::vector<double> values;  // expected steps to reach target; 0 off-component
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// W(G): sum of internal edge weights. Boundary weights are excluded.
double total_weight(const WeightedGraph& g);

/// Sum over edges of theta(e)^2 / w_e.
double flow_energy(const WeightedGraph& g, const Flow& flow);

/// Electrical (minimum-energy) unit st-flow from the potentials that solve the
/// grounded weighted Laplacian system.
Flow min_energy_flow(const WeightedGraph& g, Vertex s, Vertex t);

double effective_resistance(const WeightedGraph& g, Vertex s, Vertex t);

/// Expected first-arrival times at t of the weighted random walk on internal
/// edges; boundary edges play no part.
HittingTimes hitting_times(const WeightedGraph& g, Vertex t);
double hitting_time_exact(const WeightedGraph& g, Vertex u, Vertex t);

/// Mean and standard error of the first-arrival step count over `trials`
/// seeded walks.
MonteCarloEstimate hitting_time_mc(const WeightedGraph& g, Vertex u, Vertex t,
                                   std::uint64_t seed, std::size_t trials);

/// |H_st + H_ts - 2 W R| / max(1, 2 W R). Graphs with boundary edges are
/// rejected.
double commute_identity_residual(const WeightedGraph& g, Vertex s, Vertex t);

}  // namespace qcompose
