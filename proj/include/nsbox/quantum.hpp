#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "nsbox/box.hpp"
#include "nsbox/errors.hpp"

namespace nsbox {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Shared pure state on C^dim_a (x) C^dim_b and one projective measurement per
/// input on each side. meas_a[x][a] is Alice's projector for outcome a.
template <typename Scalar>
struct QuantumStrategy {
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  ComplexVector<Scalar> state;
  std::vector<std::vector<ComplexMatrix<Scalar>>> meas_a;
  std::vector<std::vector<ComplexMatrix<Scalar>>> meas_b;
};

inline constexpr double kQuantumValidityTolerance = 1e-12;

namespace detail {

template <typename Scalar>
void validate_measurement(const std::vector<ComplexMatrix<Scalar>>& projectors, Eigen::Index dim,
                          Scalar tol, const char* who) {
  if (projectors.empty()) throw DomainError(std::string(who) + ": measurement with no outcomes");
  ComplexMatrix<Scalar> total = ComplexMatrix<Scalar>::Zero(dim, dim);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const auto& p = projectors[i];
    if (p.rows() != dim || p.cols() != dim) throw DomainError(std::string(who) + ": projector has wrong dimension");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw DomainError(std::string(who) + ": projector is not Hermitian");
    if ((p * p - p).cwiseAbs().maxCoeff() > tol)
      throw DomainError(std::string(who) + ": projector is not idempotent");
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if ((p * projectors[j]).cwiseAbs().maxCoeff() > tol)
        throw DomainError(std::string(who) + ": projectors are not mutually orthogonal");
    }
    total += p;
  }
  if ((total - ComplexMatrix<Scalar>::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol)
    throw DomainError(std::string(who) + ": projectors do not sum to the identity");
}

}  // namespace detail

/// Throws DomainError unless the state is unit norm and every measurement is a
/// complete set of orthogonal projectors with a common outcome count per side.
template <typename Scalar>
void validate(const QuantumStrategy<Scalar>& s, Scalar tol = Scalar(kQuantumValidityTolerance)) {
  if (s.dim_a < 1 || s.dim_b < 1) throw DomainError("quantum strategy: dimensions must be positive");
  if (s.state.size() != s.dim_a * s.dim_b) throw DomainError("quantum strategy: state has wrong length");
  if (std::abs(s.state.norm() - Scalar(1)) > tol) throw DomainError("quantum strategy: state is not unit norm");
  if (s.meas_a.empty() || s.meas_b.empty()) throw DomainError("quantum strategy: no measurements");
  for (const auto& m : s.meas_a) {
    detail::validate_measurement(m, s.dim_a, tol, "alice");
    if (m.size() != s.meas_a.front().size()) throw DomainError("alice: outcome count differs between inputs");
  }
  for (const auto& m : s.meas_b) {
    detail::validate_measurement(m, s.dim_b, tol, "bob");
    if (m.size() != s.meas_b.front().size()) throw DomainError("bob: outcome count differs between inputs");
  }
}

/// Scenario induced by a strategy: integer-labelled inputs and outcomes.
template <typename Scalar>
Scenario scenario_of(const QuantumStrategy<Scalar>& s) {
  return Scenario{Alphabet::integers(s.meas_a.size()), Alphabet::integers(s.meas_b.size()),
                  Alphabet::integers(s.meas_a.front().size()), Alphabet::integers(s.meas_b.front().size())};
}

/// <psi| A_x^a (x) B_y^b |psi> for every (x, y, a, b), in Scenario::index order.
template <typename Scalar>
std::vector<Scalar> outcome_probabilities(const QuantumStrategy<Scalar>& s) {
  validate(s);
  const Scenario scenario = scenario_of(s);
  std::vector<Scalar> table(scenario.table_size());
  for (std::size_t x = 0; x < s.meas_a.size(); ++x)
    for (std::size_t y = 0; y < s.meas_b.size(); ++y)
      for (std::size_t a = 0; a < s.meas_a[x].size(); ++a)
        for (std::size_t b = 0; b < s.meas_b[y].size(); ++b) {
          const ComplexMatrix<Scalar> joint = Eigen::kroneckerProduct(s.meas_a[x][a], s.meas_b[y][b]);
          table[scenario.index(x, y, a, b)] = s.state.dot(joint * s.state).real();
        }
  return table;
}

/// Rank-one projector onto cos(theta)|0> + sin(theta)|1>.
template <typename Scalar>
ComplexMatrix<Scalar> real_ray_projector(Scalar theta) {
  ComplexVector<Scalar> v(2);
  v << std::complex<Scalar>(std::cos(theta)), std::complex<Scalar>(std::sin(theta));
  return v * v.adjoint();
}

/// Two-outcome measurement {P_theta, 1 - P_theta}; outcome 0 is the ray at theta.
template <typename Scalar>
std::vector<ComplexMatrix<Scalar>> angle_measurement(Scalar theta) {
  ComplexMatrix<Scalar> p = real_ray_projector(theta);
  return {p, ComplexMatrix<Scalar>::Identity(2, 2) - p};
}

/// (|00> + |11>) / sqrt(2).
template <typename Scalar>
ComplexVector<Scalar> maximally_entangled_qubits() {
  ComplexVector<Scalar> psi = ComplexVector<Scalar>::Zero(4);
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  psi(0) = h;
  psi(3) = h;
  return psi;
}

/// Maximally entangled qubits; Alice measures at angles {0, pi/4}, Bob at
/// {pi/8, -pi/8}. Wins CHSH with probability (2 + sqrt 2) / 4.
template <typename Scalar = double>
QuantumStrategy<Scalar> optimal_chsh_strategy() {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  QuantumStrategy<Scalar> s;
  s.dim_a = 2;
  s.dim_b = 2;
  s.state = maximally_entangled_qubits<Scalar>();
  s.meas_a = {angle_measurement<Scalar>(0), angle_measurement<Scalar>(pi / 4)};
  s.meas_b = {angle_measurement<Scalar>(pi / 8), angle_measurement<Scalar>(-pi / 8)};
  return s;
}

inline constexpr long kRationalizationDenominatorCap = 1000000;

struct RationalizedBox {
  BipartiteBox box;
  /// Largest |float probability - final exact entry| over the table.
  double max_error = 0;
};

/// Rationalizes a floating-point table: each entry is replaced by its best
/// approximation with denominator <= `denominator_cap`, then each (x, y)
/// slice is divided by its exact sum. Entries below -tolerance, or farther
/// than `tolerance` from their approximation, raise DomainError.
RationalizedBox rationalize_table(const Scenario& scenario, const std::vector<double>& table,
                                  double tolerance, long denominator_cap = kRationalizationDenominatorCap);

template <typename Scalar>
RationalizedBox box_from_quantum(const QuantumStrategy<Scalar>& strategy, double tolerance,
                                 long denominator_cap = kRationalizationDenominatorCap) {
  const auto probs = outcome_probabilities(strategy);
  std::vector<double> table(probs.begin(), probs.end());
  return rationalize_table(scenario_of(strategy), table, tolerance, denominator_cap);
}

}  // namespace nsbox
