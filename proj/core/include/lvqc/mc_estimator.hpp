#pragma once

#include <cstdint>
#include <string>

#include "lvqc/statevector.hpp"

namespace lvqc {

// Shot-simulation budget for the single-register sampling protocol.
struct EstimatorConfig {
  int n1 = 64;       // measurement shots per expectation value
  int n2 = 4096;     // outer basis-state samples
  int n3 = 256;      // Pauli-string samples (global cost only)
  std::uint64_t seed = 20240817;

  void validate() const;
};

struct EstimateResult {
  double estimate = 0.0;
  double std_error = 0.0;  // standard error of the sample mean
};

// Exact value of the Bell-pair Pauli expectation
//   F(P_A, P_B) = <Phi+| (W^dag P_A W) x P_B |Phi+> = 2^{-L} Tr[P_B^T W^dag P_A W],
// used as the oracle the sampled estimator is checked against. Pauli strings
// are length-L words over {I,X,Y,Z} (character k acts on site k+1).
double exact_bell_pauli_expectation(const DenseUnitary& w, const std::string& p_a,
                                    const std::string& p_b);

// Single-register Monte-Carlo estimate of F(P_A, P_B): draws basis states x,
// resolves P_B|x> = alpha_x |y_x>, estimates Re or Im of <y_x|W^dag P_A W|x>
// from simulated measurement shots on the superposition states
// (|x> +- |y_x>)/sqrt2 or (|x> +- i|y_x>)/sqrt2, and averages Re[alpha_x * z].
EstimateResult estimate_F(const DenseUnitary& w, const std::string& p_a, const std::string& p_b,
                          const EstimatorConfig& cfg);

// Local cost at Bell pair j via the Pauli decomposition of the projector:
//   <Pi_j> = (1/4)(1 + F_XX - F_YY + F_ZZ), estimate = 1 - <Pi_j>,
// with the three F's estimated independently and errors combined in
// quadrature.
EstimateResult estimate_lhst_j(const DenseUnitary& u, const DenseUnitary& v, int j,
                               const EstimatorConfig& cfg);

// Global cost from n3 uniformly sampled Pauli strings P, each weighted by
// c_P = +1 when P contains an even number of Y letters and -1 otherwise:
//   estimate = 1 - mean_P[c_P * F(P, P)].
EstimateResult estimate_hst(const DenseUnitary& u, const DenseUnitary& v,
                            const EstimatorConfig& cfg);

}  // namespace lvqc
