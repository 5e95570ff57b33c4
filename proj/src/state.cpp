#include "qcompose/state.hpp"

#include <cmath>
#include <string>

#include "qcompose/error.hpp"

namespace qcompose {

namespace {

bool all_finite(const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  }
  return true;
}

void require_power_of_two(std::size_t m) {
  if (m < 2 || !is_power_of_two(m)) {
    throw Error(ErrorKind::BadDimension,
                "dimension must be a power of two >= 2, got " + std::to_string(m));
  }
}

}  // namespace

bool is_power_of_two(std::size_t m) noexcept { return m != 0 && (m & (m - 1)) == 0; }

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw Error(ErrorKind::BadDimension, "state must have dim >= 1");
  if (!all_finite(amps_)) throw Error(ErrorKind::NumericalFailure, "non-finite amplitude");
  if (std::abs(amps_.squaredNorm() - 1.0) > kUnitTolerance) {
    throw Error(ErrorKind::NumericalFailure, "state is not l2-normalized");
  }
}

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd entries) : u_(std::move(entries)) {
  if (u_.rows() == 0 || u_.rows() != u_.cols()) {
    throw Error(ErrorKind::BadDimension, "unitary must be square and non-empty");
  }
  if (!(unitarity_defect(u_) <= kUnitTolerance)) {
    throw Error(ErrorKind::NumericalFailure, "matrix is not unitary within tolerance");
  }
}

StateVector UnitaryMatrix::apply(const StateVector& state) const {
  if (state.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "unitary/state dims differ");
  return StateVector(u_ * state.amplitudes());
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd residual =
      u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return residual.cwiseAbs().maxCoeff();
}

StateVector make_state(std::span<const Amplitude> raw) {
  if (raw.empty()) throw Error(ErrorKind::BadDimension, "empty amplitude array");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) v(static_cast<Eigen::Index>(i)) = raw[i];
  if (!all_finite(v)) throw Error(ErrorKind::BadParameter, "non-finite amplitude");
  const double norm = v.norm();
  if (norm == 0.0) throw Error(ErrorKind::ZeroVector, "cannot normalise the zero vector");
  return StateVector(v / norm);
}

StateVector basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

UnitaryMatrix uniform_transform(std::size_t m) {
  require_power_of_two(m);
  if (m > kMaxDenseTransform) {
    throw Error(ErrorKind::BadDimension, "dense transform limited to m <= 1024");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::MatrixXcd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // (-1)^{<i,j>} where <i,j> is the parity of the common set bits.
      const bool odd = __builtin_parityll(static_cast<unsigned long long>(i & j));
      h(i, j) = odd ? -scale : scale;
    }
  }
  return UnitaryMatrix(std::move(h));
}

StateVector apply_uniform_transform(const StateVector& state) {
  const std::size_t m = state.dim();
  require_power_of_two(m);
  Eigen::VectorXcd v = state.amplitudes();
  for (std::size_t half = 1; half < m; half <<= 1) {
    for (std::size_t block = 0; block < m; block += 2 * half) {
      for (std::size_t k = block; k < block + half; ++k) {
        const auto a = static_cast<Eigen::Index>(k);
        const auto b = static_cast<Eigen::Index>(k + half);
        const Amplitude x = v(a);
        const Amplitude y = v(b);
        v(a) = x + y;
        v(b) = x - y;
      }
    }
  }
  v /= std::sqrt(static_cast<double>(m));
  return StateVector(std::move(v));
}

StateVector apply_phase_oracle(const StateVector& state, const BitString& bits) {
  if (bits.size() != state.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "oracle string length differs from state dim");
  }
  Eigen::VectorXcd v = state.amplitudes();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) v(static_cast<Eigen::Index>(i)) = -v(static_cast<Eigen::Index>(i));
  }
  return StateVector(std::move(v));
}

double basis_probability(const StateVector& state, std::size_t index) {
  if (index >= state.dim()) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  return std::norm(state[index]);
}

double l2_distance(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "state dims differ");
  return (a.amplitudes() - b.amplitudes()).norm();
}

}  // namespace qcompose
