#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "qcompose/bits.hpp"

namespace qcompose {

using Amplitude = std::complex<double>;

inline constexpr double kUnitTolerance = 1e-10;

/// Unit vector in C^dim. Construction checks the l2 normalization.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

 private:
  Eigen::VectorXcd amps_;
};

/// Square matrix with U U^dagger = I (entrywise, within kUnitTolerance).
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Eigen::MatrixXcd entries);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(u_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return u_; }

  StateVector apply(const StateVector& state) const;

 private:
  Eigen::MatrixXcd u_;
};

/// Largest entry of |U U^dagger - I|.
double unitarity_defect(const Eigen::MatrixXcd& u);

StateVector make_state(std::span<const Amplitude> raw);
StateVector basis_state(std::size_t dim, std::size_t index);

/// Largest m accepted by uniform_transform (the dense matrix has m^2 entries).
inline constexpr std::size_t kMaxDenseTransform = std::size_t{1} << 10;

/// Tensor power of the 2x2 Hadamard matrix on log2(m) qubits.
UnitaryMatrix uniform_transform(std::size_t m);

/// Same map as uniform_transform(state.dim()) applied in O(m log m) without
/// materialising the matrix.
StateVector apply_uniform_transform(const StateVector& state);

StateVector apply_phase_oracle(const StateVector& state, const BitString& bits);
double basis_probability(const StateVector& state, std::size_t index);
double l2_distance(const StateVector& a, const StateVector& b);

bool is_power_of_two(std::size_t m) noexcept;

}  // namespace qcompose
