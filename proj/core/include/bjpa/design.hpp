#pragma once

namespace bjpa {

/// Full circuit parameterization of a Blochnium chain: N master SQUIDs
/// (Quartons), each shunting a run of M slave SQUIDs.
struct BlochniumDesign {
  int n_quartons = 1;      // N, number of Quartons
  int m_slaves = 1;        // M, slave SQUIDs per Quarton
  double alpha_c = 0.0;    // E_Jm = alpha_c * E_Js; 0 means no master junction
  double e_js = 0.0;       // slave Josephson energy [J]
  double c_g = 0.0;        // per-node ground capacitance [F]
  double c_js = 0.0;       // slave junction capacitance [F]
  double c_jm = 0.0;       // master junction capacitance [F]
  double z0 = 50.0;        // resonator characteristic impedance [ohm]
  double kappa = 0.0;      // input coupling rate [rad/s]
  double flux_bias = 0.0;  // junction phase bias [rad], |phi| < pi/2

  int node_count() const { return n_quartons * m_slaves + 1; }

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

}  // namespace bjpa
