#pragma once

#include <Eigen/Dense>
#include <optional>

#include "bjpa/design.hpp"

namespace bjpa {

/// Linear-circuit matrices of the chain on node fluxes phi_0..phi_{M*N}.
/// Both are symmetric; inv_ind_matrix is a weighted graph Laplacian with a
/// single zero mode (uniform flux shift) until a node is grounded.
struct CircuitMatrices {
  int node_count = 0;
  Eigen::MatrixXd cap_matrix;      // [F]
  Eigen::MatrixXd inv_ind_matrix;  // [1/H]
};

/// Reduced single-mode Kerr-oscillator parameters in physical units.
struct EffectiveModel {
  double omega_eff = 0.0;  // [rad/s]
  double kappa = 0.0;      // [rad/s]
  double kerr_k = 0.0;     // Kerr coefficient K [rad/s]
  double e_c = 0.0;        // charging energy [J]
};

/// Dense eigensolves get slow past a couple thousand nodes; anything larger
/// than this is rejected outright.
inline constexpr int kMaxChainNodes = 10000;

/// Flux-tuned junction inductance L_J0 / cos(flux_bias).
/// Throws ConfigError for |flux_bias| >= pi/2.
double junction_inductance(double l_j0, double flux_bias);

/// Zero-flux slave inductance (Phi0/2pi)^2 / E_Js.
double slave_inductance_zero_flux(const BlochniumDesign& design);

/// Assembles capacitance and inverse-inductance matrices for the chain.
/// Slave links join consecutive nodes; master links join nodes M*k and
/// M*(k+1). Master inductance is omitted when alpha_c == 0 (no junction),
/// while the master capacitance link is always present.
CircuitMatrices build_matrices(const BlochniumDesign& design);

/// Smallest strictly positive generalized eigenfrequency of
/// inv_ind * v = omega^2 * cap * v with node 0 grounded (row/col deleted).
/// Throws ConfigError if the grounded capacitance matrix is not positive
/// definite, ComputeError if no positive mode exists.
double effective_mode(const CircuitMatrices& matrices);

/// e^2 / (2 c_sigma). Throws ConfigError for non-positive capacitance.
double charging_energy(double c_sigma);

/// K = -E_c (1 - alpha_c) / (6 hbar N M). Zero exactly at alpha_c = 1.
double kerr_coefficient(const BlochniumDesign& design, double e_c);

/// Full pipeline: build matrices with flux-scaled inductances, solve the
/// effective mode, attach the Kerr coefficient. E_c defaults to the
/// per-junction value e^2/(2 C_Js) unless overridden.
EffectiveModel tuned_model(const BlochniumDesign& design,
                           std::optional<double> e_c_override = std::nullopt);

/// Rough coupling-rate estimate omega^2 C_g^2 Z0 / C_total for diagnostics
/// only; the normative kappa is the one supplied on the design.
double estimate_kappa(const BlochniumDesign& design, double omega_eff);

}  // namespace bjpa
