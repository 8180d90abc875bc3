#include "bjpa/circuit.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "bjpa/constants.hpp"
#include "bjpa/errors.hpp"

namespace bjpa {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void add_link(Eigen::MatrixXd& m, int i, int j, double w) {
  m(i, i) += w;
  m(j, j) += w;
  m(i, j) -= w;
  m(j, i) -= w;
}

}  // namespace

void BlochniumDesign::validate() const {
  if (n_quartons < 1) throw ConfigError("n_quartons must be >= 1");
  if (m_slaves < 1) throw ConfigError("m_slaves must be >= 1");
  if (!(alpha_c >= 0.0)) throw ConfigError("alpha_c must be >= 0");
  if (!(e_js > 0.0)) throw ConfigError("e_js must be > 0");
  if (!(c_g > 0.0)) throw ConfigError("c_g must be > 0");
  if (!(c_js > 0.0)) throw ConfigError("c_js must be > 0");
  if (!(c_jm > 0.0)) throw ConfigError("c_jm must be > 0");
  if (!(z0 > 0.0)) throw ConfigError("z0 must be > 0");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be > 0");
  if (!(std::abs(flux_bias) < kHalfPi))
    throw ConfigError("flux_bias must satisfy |flux_bias| < pi/2");
  if (node_count() > kMaxChainNodes)
    throw ConfigError("chain has " + std::to_string(node_count()) + " nodes; the cap is " +
                      std::to_string(kMaxChainNodes));
}

double junction_inductance(double l_j0, double flux_bias) {
  if (!(l_j0 > 0.0)) throw ConfigError("junction inductance must be > 0");
  const double c = std::cos(flux_bias);
  if (!(std::abs(flux_bias) < kHalfPi) || !(c > 0.0))
    throw ConfigError("flux bias at or beyond pi/2: junction inductance is singular");
  return l_j0 / c;
}

double slave_inductance_zero_flux(const BlochniumDesign& design) {
  if (!(design.e_js > 0.0)) throw ConfigError("e_js must be > 0");
  const double phi0 = constants::reduced_flux_quantum;
  return phi0 * phi0 / design.e_js;
}

CircuitMatrices build_matrices(const BlochniumDesign& design) {
  design.validate();
  const int nodes = design.node_count();
  const int n = design.n_quartons;
  const int m = design.m_slaves;

  CircuitMatrices out;
  out.node_count = nodes;
  out.cap_matrix = Eigen::MatrixXd::Zero(nodes, nodes);
  out.inv_ind_matrix = Eigen::MatrixXd::Zero(nodes, nodes);

  out.cap_matrix.diagonal().array() += design.c_g;

  const double l_js = junction_inductance(slave_inductance_zero_flux(design), design.flux_bias);
  for (int k = 0; k + 1 < nodes; ++k) {
    add_link(out.cap_matrix, k, k + 1, design.c_js);
    add_link(out.inv_ind_matrix, k, k + 1, 1.0 / l_js);
  }

  // Master SQUID across each Quarton. alpha_c == 0 means the junction is
  // absent as an inductor (open circuit), so only the capacitive link stays.
  for (int k = 0; k < n; ++k) {
    const int a = m * k;
    const int b = m * (k + 1);
    add_link(out.cap_matrix, a, b, design.c_jm);
    if (design.alpha_c > 0.0) {
      const double l_jm = l_js / design.alpha_c;
      add_link(out.inv_ind_matrix, a, b, 1.0 / l_jm);
    }
  }
  return out;
}

double effective_mode(const CircuitMatrices& matrices) {
  const int nodes = matrices.node_count;
  if (nodes < 2) throw ConfigError("need at least two nodes (one grounded)");
  if (nodes > kMaxChainNodes)
    throw ConfigError("chain has " + std::to_string(nodes) + " nodes; the cap is " +
                      std::to_string(kMaxChainNodes));

  // Ground node 0: drop its row and column.
  const int g = nodes - 1;
  Eigen::MatrixXd stiff = matrices.inv_ind_matrix.bottomRightCorner(g, g);
  Eigen::MatrixXd mass = matrices.cap_matrix.bottomRightCorner(g, g);

  {
    Eigen::LLT<Eigen::MatrixXd> llt(mass);
    if (llt.info() != Eigen::Success)
      throw ConfigError("capacitance matrix is not positive definite after grounding");
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(stiff, mass,
                                                                   Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ComputeError("generalized eigensolver failed to converge");

  const auto& evs = solver.eigenvalues();
  const double scale = std::max(std::abs(evs(0)), std::abs(evs(g - 1)));
  const double floor = scale * 1e-12;
  for (int i = 0; i < g; ++i) {
    if (evs(i) > floor) return std::sqrt(evs(i));
  }
  throw ComputeError("no strictly positive mode found");
}

double charging_energy(double c_sigma) {
  if (!(c_sigma > 0.0)) throw ConfigError("charging-energy capacitance must be > 0");
  const double e = constants::elementary_charge;
  return e * e / (2.0 * c_sigma);
}

double kerr_coefficient(const BlochniumDesign& design, double e_c) {
  if (design.n_quartons < 1 || design.m_slaves < 1)
    throw ConfigError("n_quartons and m_slaves must be >= 1");
  if (!(e_c >= 0.0)) throw ConfigError("e_c must be >= 0");
  const double junctions = static_cast<double>(design.n_quartons) *
                           static_cast<double>(design.m_slaves);
  return -e_c * (1.0 - design.alpha_c) / (6.0 * constants::hbar * junctions);
}

EffectiveModel tuned_model(const BlochniumDesign& design, std::optional<double> e_c_override) {
  const CircuitMatrices matrices = build_matrices(design);
  EffectiveModel model;
  model.omega_eff = effective_mode(matrices);
  model.kappa = design.kappa;
  model.e_c = e_c_override ? *e_c_override : charging_energy(design.c_js);
  model.kerr_k = kerr_coefficient(design, model.e_c);
  return model;
}

double estimate_kappa(const BlochniumDesign& design, double omega_eff) {
  design.validate();
  if (!(omega_eff > 0.0)) throw ConfigError("omega_eff must be > 0");
  const double nodes = static_cast<double>(design.node_count());
  const double links = nodes - 1.0;
  const double c_total = nodes * design.c_g + links * design.c_js +
                         static_cast<double>(design.n_quartons) * design.c_jm;
  return omega_eff * omega_eff * design.c_g * design.c_g * design.z0 / c_total;
}

}  // namespace bjpa
