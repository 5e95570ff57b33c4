#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcompose/electric.hpp"
#include "test_util.hpp"

using namespace qcompose;

namespace {

WeightedGraph single_edge() { return WeightedGraph(2, {{0, 1, 1.0}}); }

// Weighted line with w_l = r^l, l = 1..edges.
WeightedGraph geometric_line(std::size_t edges, double r) {
  std::vector<Edge> list;
  for (std::size_t l = 1; l <= edges; ++l) list.push_back({l - 1, l, std::pow(r, static_cast<double>(l))});
  return WeightedGraph(edges + 1, std::move(list));
}

void check_flow_invariants(const WeightedGraph& g, const Flow& f) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (const Edge& e : g.edges()) adjacent[e.u][e.v] = adjacent[e.v][e.u] = true;
  for (std::size_t u = 0; u < n; ++u) {
    double out = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(std::abs(f.at(u, v) + f.at(v, u)) <= 1e-9);
      if (!adjacent[u][v]) CHECK(f.at(u, v) == 0.0);
      out += f.at(u, v);
    }
    if (u == f.source) {
      CHECK(std::abs(out - 1.0) <= 1e-9);
    } else if (u == f.sink) {
      CHECK(std::abs(out + 1.0) <= 1e-9);
    } else {
      CHECK(std::abs(out) <= 1e-9);
    }
  }
}

}  // namespace

TEST_SUITE("electric") {
  TEST_CASE("graph validation") {
    CHECK(kind_of([] { WeightedGraph(0, {}); }) == ErrorKind::EmptyGraph);
    CHECK(kind_of([] { WeightedGraph(2, {{0, 0, 1.0}}); }) == ErrorKind::InvalidGraph);
    CHECK(kind_of([] { WeightedGraph(2, {{0, 1, 0.0}}); }) == ErrorKind::InvalidGraph);
    CHECK(kind_of([] { WeightedGraph(2, {{0, 1, -1.0}}); }) == ErrorKind::InvalidGraph);
    CHECK(kind_of([] { WeightedGraph(2, {{0, 2, 1.0}}); }) == ErrorKind::InvalidGraph);
    CHECK(kind_of([] { WeightedGraph(2, {{0, 1, 1.0}, {1, 0, 2.0}}); }) == ErrorKind::InvalidGraph);
    CHECK(kind_of([] { WeightedGraph(2, {{0, 1, 1.0}}, {{5, 1.0}}); }) == ErrorKind::InvalidGraph);
    CHECK(kind_of([] { WeightedGraph(2, {{0, 1, 1.0}}, {{0, -1.0}}); }) == ErrorKind::InvalidGraph);
  }

  TEST_CASE("total_weight") {
    CHECK(total_weight(single_edge()) == 1.0);
    // Rejecting line at eps = 1/3, D = 5: internal weights 2^-1..2^-4; boundary excluded.
    std::vector<Edge> edges;
    for (std::size_t l = 1; l <= 4; ++l) edges.push_back({l - 1, l, std::ldexp(1.0, -static_cast<int>(l))});
    const WeightedGraph line(5, edges, {{0, 1.0}, {4, std::ldexp(1.0, -5)}});
    CHECK(total_weight(line) == 15.0 / 16.0);
    CHECK(kind_of([] { total_weight(WeightedGraph(3, {})); }) == ErrorKind::EmptyGraph);
  }

  TEST_CASE("min_energy_flow: single edge and paths") {
    const Flow f = min_energy_flow(single_edge(), 0, 1);
    CHECK(f.at(0, 1) == doctest::Approx(1.0));
    CHECK(f.energy == doctest::Approx(1.0));

    for (std::size_t k : {2u, 5u, 9u}) {
      const WeightedGraph p = geometric_line(k, 1.7);
      const Flow pf = min_energy_flow(p, 0, k);
      for (std::size_t l = 0; l < k; ++l) CHECK(pf.at(l, l + 1) == doctest::Approx(1.0).epsilon(1e-12));
      check_flow_invariants(p, pf);
    }
  }

  TEST_CASE("min_energy_flow: two parallel length-2 paths of weight 2 halve the energy") {
    // Series pair of weight-2 edges has resistance 1 (the single-edge analog);
    // two of them in parallel give 1/2.
    const WeightedGraph one(3, {{0, 1, 2.0}, {1, 2, 2.0}});
    const WeightedGraph two(4, {{0, 1, 2.0}, {1, 3, 2.0}, {0, 2, 2.0}, {2, 3, 2.0}});
    CHECK(min_energy_flow(one, 0, 2).energy == doctest::Approx(1.0));
    const Flow f = min_energy_flow(two, 0, 3);
    CHECK(f.energy == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f.at(0, 1) == doctest::Approx(0.5));
    CHECK(f.at(0, 2) == doctest::Approx(0.5));
  }

  TEST_CASE("min_energy_flow: argument errors") {
    const WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK(kind_of([&] { min_energy_flow(split, 0, 3); }) == ErrorKind::Disconnected);
    CHECK(kind_of([&] { min_energy_flow(split, 1, 1); }) == ErrorKind::SameVertex);
    CHECK(kind_of([&] { effective_resistance(split, 0, 2); }) == ErrorKind::Disconnected);
  }

  TEST_CASE("flow invariants and energy on random graphs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + trial % 7;
      const WeightedGraph g = oracle::random_connected_graph(rng, n);
      const std::size_t s = 0, t = n - 1;
      const Flow f = min_energy_flow(g, s, t);
      check_flow_invariants(g, f);
      CHECK(f.energy == doctest::Approx(flow_energy(g, f)).epsilon(1e-10));
      CHECK(effective_resistance(g, s, t) == doctest::Approx(oracle::resistance_pinv(g, s, t)).epsilon(1e-9));
    }
  }

  TEST_CASE("effective_resistance: series law on paths") {
    CHECK(effective_resistance(single_edge(), 0, 1) == 1.0);
    for (std::size_t k : {1u, 2u, 3u, 7u, 20u}) {
      CHECK(effective_resistance(oracle::unit_path(k), 0, k) == doctest::Approx(static_cast<double>(k)).epsilon(1e-12));
    }
    for (double r : {0.5, 2.0, 9.0, 1.0 / 9}) {
      const std::size_t k = 31;
      double series = 0.0;
      for (std::size_t l = 1; l <= k; ++l) series += 1.0 / std::pow(r, static_cast<double>(l));
      CHECK(effective_resistance(geometric_line(k, r), 0, k) == doctest::Approx(series).epsilon(1e-12));
    }
  }

  TEST_CASE("effective_resistance: accepting purifier line matches the geometric sum") {
    // p0 = 0.2: w_l = 4^l, R = sum_{l=1}^{D-1} (1/4)^l.
    const std::size_t d = 12;
    double expect = 0.0;
    for (std::size_t l = 1; l < d; ++l) expect += std::pow(0.25, static_cast<double>(l));
    CHECK(effective_resistance(geometric_line(d - 1, 4.0), 0, d - 1) == doctest::Approx(expect).epsilon(1e-12));
  }

  TEST_CASE("minimum energy never exceeds the canonical path flow") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      // A line 0..k with random chords: the flow along the line is feasible.
      const std::size_t k = 3 + trial % 5;
      std::uniform_real_distribution<double> w(0.1, 10.0);
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < k; ++i) edges.push_back({i, i + 1, w(rng)});
      for (std::size_t i = 0; i + 2 <= k; ++i) {
        if (trial % 2) edges.push_back({i, i + 2, w(rng)});
      }
      const WeightedGraph g(k + 1, edges);
      Flow path;
      path.source = 0;
      path.sink = k;
      path.theta = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k + 1));
      for (std::size_t i = 0; i < k; ++i) {
        path.theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1.0;
        path.theta(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = -1.0;
      }
      CHECK(min_energy_flow(g, 0, k).energy <= flow_energy(g, path) * (1 + 1e-12));
    }
  }

  TEST_CASE("hitting_time_exact") {
    CHECK(hitting_time_exact(single_edge(), 0, 1) == doctest::Approx(1.0));
    CHECK(hitting_time_exact(oracle::unit_path(2), 0, 2) == doctest::Approx(4.0));
    CHECK(hitting_time_exact(oracle::unit_path(2), 2, 0) == doctest::Approx(4.0));
    CHECK(hitting_time_exact(oracle::unit_path(2), 1, 1) == 0.0);
    const WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK(kind_of([&] { hitting_time_exact(split, 0, 3); }) == ErrorKind::Disconnected);
  }

  TEST_CASE("hitting times match value iteration") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t n = 2 + trial % 6;
      const WeightedGraph g = oracle::random_connected_graph(rng, n, 0.5, 2.0);
      const HittingTimes h = hitting_times(g, 0);
      const std::vector<double> ref = oracle::hitting_value_iteration(g, 0);
      for (std::size_t u = 0; u < n; ++u) CHECK(h.values[u] == doctest::Approx(ref[u]).epsilon(1e-9));
      CHECK(h.values[0] == 0.0);
    }
  }

  TEST_CASE("boundary edges do not enter the classical walk") {
    const WeightedGraph plain = oracle::unit_path(3);
    const WeightedGraph bounded(4, plain.edges(), {{0, 5.0}, {3, 0.25}});
    CHECK(hitting_time_exact(bounded, 0, 3) == hitting_time_exact(plain, 0, 3));
    CHECK(total_weight(bounded) == total_weight(plain));
  }

  TEST_CASE("commute_identity_residual") {
    CHECK(commute_identity_residual(single_edge(), 0, 1) <= 1e-15);
    CHECK(commute_identity_residual(oracle::unit_path(2), 0, 2) <= 1e-15);
    const WeightedGraph bounded(2, {{0, 1, 1.0}}, {{0, 1.0}});
    CHECK(kind_of([&] { commute_identity_residual(bounded, 0, 1); }) == ErrorKind::BoundaryPresent);

    std::mt19937_64 rng(20240917);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial) % 7;
      const WeightedGraph g = oracle::random_connected_graph(rng, n);
      CHECK(commute_identity_residual(g, 0, n - 1) <= 1e-9);
    }
  }

  TEST_CASE("hitting_time_mc") {
    const MonteCarloEstimate edge = hitting_time_mc(single_edge(), 0, 1, 3, 1000);
    CHECK(edge.mean == 1.0);
    CHECK(edge.std_error == 0.0);

    const MonteCarloEstimate p2 = hitting_time_mc(oracle::unit_path(2), 0, 2, 1, 100000);
    CHECK(std::abs(p2.mean - 4.0) <= 3.0 * p2.std_error);

    const WeightedGraph line = geometric_line(5, 0.5);  // w_l = 2^-l, D = 6
    const double exact = hitting_time_exact(line, 0, 5);
    const MonteCarloEstimate est = hitting_time_mc(line, 0, 5, 2, 100000);
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error);

    CHECK(kind_of([] { hitting_time_mc(WeightedGraph(2, {{0, 1, 1.0}}), 0, 1, 0, 0); }) == ErrorKind::BadParameter);
    const WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK(kind_of([&] { hitting_time_mc(split, 0, 3, 0, 10); }) == ErrorKind::Disconnected);
  }

  TEST_CASE("hitting_time_mc is reproducible per seed") {
    const WeightedGraph g = oracle::unit_path(4);
    const auto a = hitting_time_mc(g, 0, 4, 42, 5000);
    const auto b = hitting_time_mc(g, 0, 4, 42, 5000);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
  }
}
