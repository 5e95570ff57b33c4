#include <doctest.h>

#include <cmath>

#include "qcompose/walk.hpp"
#include "test_util.hpp"

using namespace qcompose;

namespace {

// Overlap of e_0 with the unique vector orthogonal to every coin star:
// |v_l|^2 proportional to rho^l, rho = p0 / (1 - p0).
double analytic_overlap(double p0, std::size_t depth) {
  if (p0 == 1.0) return 0.0;
  const double rho = p0 / (1.0 - p0);
  double sum = 0.0, term = 1.0;
  for (std::size_t l = 0; l <= depth; ++l) {
    sum += term;
    term *= rho;
  }
  return 1.0 / sum;
}

Eigen::VectorXcd unit(std::size_t dim, std::size_t i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

}  // namespace

TEST_SUITE("walk") {
  TEST_CASE("edge space ordering") {
    const PurifierLine line = purifier_line(Probability::ratio(1, 3), Probability::ratio(1, 3), 5);
    const EdgeSpace space(line.graph);
    CHECK(space.dim() == 6);
    CHECK(space.boundary_index(0) == std::optional<std::size_t>(4));
    CHECK(space.boundary_index(4) == std::optional<std::size_t>(5));
    CHECK_FALSE(space.boundary_index(2).has_value());
  }

  TEST_CASE("star_state on the purifier line") {
    for (auto p0 : {Probability::ratio(1, 3), Probability::ratio(1, 10), Probability::ratio(9, 10)}) {
      const std::size_t d = 6;
      const PurifierLine line = purifier_line(p0, Probability::ratio(1, 3), d);
      const EdgeSpace space(line.graph);
      // v_1: entrance boundary (weight 1) and edge 1 (weight (1-p0)/p0).
      const StateVector s0 = star_state(space, 0);
      CHECK(std::abs(s0[*space.boundary_index(0)] - std::sqrt(p0.value())) <= 1e-12);
      CHECK(std::abs(s0[0] - std::sqrt(p0.complement())) <= 1e-12);
      // Every vertex has the same coin: sqrt(p0) toward the entrance.
      for (Vertex k = 1; k + 1 < d; ++k) {
        const StateVector s = star_state(space, k);
        CHECK(std::abs(s[k - 1] - std::sqrt(p0.value())) <= 1e-12);
        CHECK(std::abs(s[k] - std::sqrt(p0.complement())) <= 1e-12);
      }
      const StateVector last = star_state(space, d - 1);
      CHECK(std::abs(last[d - 2] - std::sqrt(p0.value())) <= 1e-12);
      CHECK(std::abs(last[*space.boundary_index(d - 1)] - std::sqrt(p0.complement())) <= 1e-12);
    }
  }

  TEST_CASE("star_state errors") {
    const EdgeSpace space(WeightedGraph(3, {{0, 1, 1.0}}));
    CHECK(kind_of([&] { star_state(space, 2); }) == ErrorKind::IsolatedVertex);
    CHECK(kind_of([&] { star_state(space, 7); }) == ErrorKind::IndexOutOfRange);
  }

  TEST_CASE("stars on one side are orthogonal") {
    const PurifierLine line = purifier_line(0.3, Probability::ratio(1, 3), 9);
    const EdgeSpace space(line.graph);
    for (Vertex a = 0; a < 9; ++a) {
      for (Vertex b = a + 2; b < 9; b += 2) {
        const Amplitude ip = star_state(space, a).amplitudes().dot(star_state(space, b).amplitudes());
        CHECK(std::abs(ip) <= 1e-15);
      }
    }
  }

  TEST_CASE("single edge without boundary gives the identity walk") {
    const WalkOperator op = build_walk_operator(EdgeSpace(WeightedGraph(2, {{0, 1, 3.0}})));
    CHECK((op.unitary.matrix() - Eigen::MatrixXcd::Identity(1, 1)).norm() <= 1e-15);
  }

  TEST_CASE("walk operator is unitary with unit-modulus spectrum") {
    for (std::size_t d : {4u, 8u, 16u}) {
      for (double p0 : {0.1, 0.5, 0.9}) {
        const WalkOperator op = build_walk_operator(EdgeSpace(purifier_line(p0, Probability::ratio(1, 3), d).graph));
        CHECK(unitarity_defect(op.unitary.matrix()) <= 1e-10);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.unitary.matrix());
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
          CHECK(std::abs(std::abs(es.eigenvalues()(i)) - 1.0) <= 1e-10);
        }
      }
    }
  }

  TEST_CASE("build_walk_operator rejects odd cycles") {
    const WeightedGraph triangle(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    CHECK(kind_of([&] { build_walk_operator(EdgeSpace(triangle)); }) == ErrorKind::NotBipartite);
  }

  TEST_CASE("coin_line_walk matches the purifier line walk up to basis order") {
    for (double p0 : {0.1, 0.3, 0.7}) {
      const std::size_t d = 7;
      const WalkOperator graph_op = build_walk_operator(EdgeSpace(purifier_line(p0, Probability::ratio(1, 3), d).graph));
      const WalkOperator coin_op = coin_line_walk(p0, d);
      // coin e_0 = entrance (index D-1), e_l = internal edge l (index l-1), e_D = terminal (index D).
      std::vector<std::size_t> to_graph(d + 1);
      to_graph[0] = d - 1;
      for (std::size_t l = 1; l < d; ++l) to_graph[l] = l - 1;
      to_graph[d] = d;
      double worst = 0.0;
      for (std::size_t i = 0; i <= d; ++i) {
        for (std::size_t j = 0; j <= d; ++j) {
          const auto gi = static_cast<Eigen::Index>(to_graph[i]);
          const auto gj = static_cast<Eigen::Index>(to_graph[j]);
          worst = std::max(worst, std::abs(coin_op.unitary.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                                           graph_op.unitary.matrix()(gi, gj)));
        }
      }
      CHECK(worst <= 1e-12);
    }
  }

  TEST_CASE("purifier_line weights") {
    const PurifierLine half = purifier_line(Probability::ratio(1, 2), Probability::ratio(1, 3), 6);
    for (const Edge& e : half.graph.edges()) CHECK(e.weight == 1.0);
    CHECK(half.graph.boundary_weight(0) == 1.0);
    CHECK(half.graph.boundary_weight(5) == 1.0);

    const PurifierLine rej = purifier_line(Probability::ratio(2, 3), Probability::ratio(1, 3), 6);
    for (std::size_t l = 1; l < 6; ++l) CHECK(rej.graph.edges()[l - 1].weight == std::ldexp(1.0, -static_cast<int>(l)));
    CHECK(rej.graph.boundary_weight(5) == std::ldexp(1.0, -6));

    const PurifierLine acc = purifier_line(Probability::ratio(1, 3), Probability::ratio(1, 3), 6);
    for (std::size_t l = 1; l < 6; ++l) CHECK(acc.graph.edges()[l - 1].weight == std::ldexp(1.0, static_cast<int>(l)));
    CHECK(acc.graph.boundary_weight(5) == 64.0);
    CHECK(acc.entrance() == 0);
    CHECK(acc.terminal() == 5);
  }

  TEST_CASE("purifier_line parameter errors") {
    const Probability third = Probability::ratio(1, 3);
    CHECK(kind_of([&] { purifier_line(0.0, third, 4); }) == ErrorKind::BadParameter);
    CHECK(kind_of([&] { purifier_line(1.0, third, 4); }) == ErrorKind::BadParameter);
    CHECK(kind_of([&] { purifier_line(0.2, 0.5, 4); }) == ErrorKind::BadParameter);
    CHECK(kind_of([&] { purifier_line(0.2, 0.0, 4); }) == ErrorKind::BadParameter);
    CHECK(kind_of([&] { purifier_line(0.2, third, 1); }) == ErrorKind::BadParameter);
    CHECK(kind_of([&] { purifier_line(1e-300, third, 400); }) == ErrorKind::BadParameter);
  }

  TEST_CASE("W and R on the lines equal the geometric sum") {
    const Probability eps = Probability::ratio(1, 3);
    for (std::size_t d : {2u, 5u, 10u, 20u, 40u}) {
      const double sum = purifier_geometric_sum(eps, d);
      const PurifierLine rej = purifier_line(eps.complement(), eps, d);
      const PurifierLine acc = purifier_line(eps, eps, d);
      CHECK(total_weight(rej.graph) == doctest::Approx(sum).epsilon(1e-12));
      CHECK(effective_resistance(acc.graph, acc.entrance(), acc.terminal()) == doctest::Approx(sum).epsilon(1e-12));
    }
  }

  TEST_CASE("purifier_complexity") {
    const Probability eps = Probability::ratio(1, 3);
    CHECK(purifier_complexity(eps, 5) == doctest::Approx(15.0 / 16.0).epsilon(1e-15));
    CHECK(purifier_complexity_ceiling(eps) == 2.0);
    double prev = 0.0;
    for (std::size_t d = 2; d <= 64; ++d) {
      const double c = purifier_complexity(eps, d);
      CHECK(c >= prev);
      CHECK(c <= purifier_complexity_ceiling(eps));
      prev = c;
    }
    for (double e : {0.05, 0.2, 0.45}) {
      CHECK(purifier_complexity(e, 200) <= purifier_complexity_ceiling(e));
    }
  }

  TEST_CASE("perturbation_bound") {
    const Probability eps = Probability::ratio(1, 3);
    CHECK(perturbation_bound(eps, 1) == 0.5);
    CHECK(perturbation_bound(eps, 10) == std::ldexp(1.0, -10));
    for (std::size_t d = 1; d < 60; ++d) CHECK(perturbation_bound(eps, d + 1) / perturbation_bound(eps, d) == 0.5);
    CHECK(kind_of([&] { perturbation_bound(eps, 0); }) == ErrorKind::BadParameter);
  }

  TEST_CASE("wrong-side quantities blow up exponentially") {
    const Probability eps = Probability::ratio(1, 3);
    double prev_r = 0.0, prev_w = 0.0;
    for (std::size_t d = 4; d <= 32; d += 4) {
      const double r = terminal_resistance(purifier_line(eps.complement(), eps, d));
      const double w = total_weight(purifier_line(eps, eps, d).graph);
      CHECK(r >= std::ldexp(1.0, static_cast<int>(d) - 1));
      CHECK(w >= std::ldexp(1.0, static_cast<int>(d) - 1));
      if (prev_r > 0.0) {
        CHECK(r / prev_r >= 15.0);
        CHECK(w / prev_w >= 15.0);
      }
      prev_r = r;
      prev_w = w;
    }
  }

  TEST_CASE("stationary_overlap basics") {
    const WalkOperator op = coin_line_walk(0.5, 3);
    CHECK(kind_of([&] { stationary_overlap(op, basis_state(7, 0)); }) == ErrorKind::DimensionMismatch);
    // The 1-eigenvector at p0 = 1/2 alternates in sign with equal magnitude.
    Eigen::VectorXcd v(4);
    v << 0.5, -0.5, 0.5, -0.5;
    CHECK(stationary_overlap(op, StateVector(v)) == doctest::Approx(1.0).epsilon(1e-10));
    Eigen::VectorXcd w(4);
    w << 0.5, 0.5, 0.5, 0.5;
    CHECK(stationary_overlap(op, StateVector(w)) <= 1e-10);
  }

  TEST_CASE("purifier_statistic matches the analytic overlap") {
    for (std::size_t d : {2u, 4u, 8u, 16u, 32u}) {
      for (double p0 : {0.0, 0.05, 0.1, 1.0 / 3, 0.5, 2.0 / 3, 0.9, 1.0}) {
        CHECK(purifier_statistic(p0, d) == doctest::Approx(analytic_overlap(p0, d)).epsilon(1e-9).scale(1.0));
      }
    }
    CHECK(purifier_statistic(0.1, 16) == doctest::Approx((8.0 / 9.0) / (1.0 - std::pow(9.0, -17))).epsilon(1e-10));
    CHECK(purifier_statistic(0.1, 16) - purifier_statistic(0.9, 16) >= 0.5);
  }

  TEST_CASE("coin walk at the endpoints") {
    // p0 = 0: every star is e_{k+1}, so e_0 is untouched.
    CHECK(stationary_overlap(coin_line_walk(0.0, 5), StateVector(unit(6, 0))) == doctest::Approx(1.0));
    CHECK(stationary_overlap(coin_line_walk(1.0, 5), StateVector(unit(6, 0))) <= 1e-12);
  }

  TEST_CASE("decide_purifier") {
    const Probability eps = Probability::ratio(1, 3);
    CHECK(decide_purifier(0.0, eps, 8));
    CHECK_FALSE(decide_purifier(1.0 - 1e-12, eps, 8));
    for (std::size_t d : {4u, 8u, 16u, 32u}) {
      CHECK(decide_purifier(0.1, eps, d));
      CHECK_FALSE(decide_purifier(0.9, eps, d));
      CHECK(decide_purifier(eps, eps, d));
      CHECK_FALSE(decide_purifier(eps.complement(), eps, d));
    }
    CHECK(kind_of([&] { decide_purifier(0.5, eps, 8); }) == ErrorKind::PromiseViolation);
    CHECK(kind_of([&] { decide_purifier(0.1, eps, 1); }) == ErrorKind::BadParameter);
    CHECK(decide_purifier(0.9, eps, 8, -1.0));
  }

  TEST_CASE("default_threshold lies between the two sides") {
    const Probability eps = Probability::ratio(1, 3);
    for (std::size_t d : {2u, 8u, 16u}) {
      const double t = default_threshold(eps, d);
      CHECK(purifier_statistic(eps, d) > t);
      CHECK(purifier_statistic(eps.complement(), d) < t);
    }
  }
}
