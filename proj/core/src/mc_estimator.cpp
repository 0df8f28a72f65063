#include "lvqc/mc_estimator.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

#include "lvqc/errors.hpp"

namespace lvqc {

namespace {

using cd = std::complex<double>;

int qubits_of(const DenseUnitary& w) {
  const std::int64_t n = w.rows();
  if (n < 2 || w.cols() != n || (n & (n - 1)) != 0) {
    throw std::invalid_argument("estimator: matrix must be square with power-of-two dimension");
  }
  int qubits = 0;
  while ((std::int64_t{1} << qubits) < n) ++qubits;
  if (qubits > kDenseQubitLimit) {
    throw CapacityError("estimator: " + std::to_string(qubits) +
                        " qubits exceeds the dense simulation limit");
  }
  return qubits;
}

void check_pauli_word(const std::string& p, int qubits) {
  if (static_cast<int>(p.size()) != qubits) {
    throw std::invalid_argument("estimator: Pauli word length " + std::to_string(p.size()) +
                                " does not match register size " + std::to_string(qubits));
  }
  for (char c : p) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument(std::string("estimator: invalid Pauli letter '") + c + "'");
    }
  }
}

// Exact <psi|P|psi>; Hermiticity makes it real, anything beyond rounding is a
// bug upstream.
double pauli_expectation(const Eigen::VectorXcd& psi, const std::string& p) {
  cd acc = 0.0;
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t x = 0; x < dim; ++x) {
    const PauliAction act = pauli_action(p, x);
    acc += std::conj(psi[static_cast<Eigen::Index>(x ^ act.flip_mask)]) * act.phase *
           psi[static_cast<Eigen::Index>(x)];
  }
  if (std::abs(acc.imag()) > 1e-12) {
    throw IntegrityError("estimator: Pauli expectation has imaginary residue " +
                         std::to_string(acc.imag()));
  }
  return acc.real();
}

// Simulates n1 projective measurements of the Pauli word on |psi| and returns
// the empirical mean of the +-1 outcomes.
double sample_expectation(const Eigen::VectorXcd& psi, const std::string& p, int n1,
                          std::mt19937_64& rng) {
  const double e = pauli_expectation(psi, p);
  double p_plus = 0.5 * (1.0 + e);
  if (p_plus < 0.0) p_plus = 0.0;
  if (p_plus > 1.0) p_plus = 1.0;
  std::binomial_distribution<int> shots(n1, p_plus);
  const int k = shots(rng);
  return 2.0 * static_cast<double>(k) / n1 - 1.0;
}

struct RunningMean {
  double sum = 0.0;
  double sumsq = 0.0;
  long long n = 0;

  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++n;
  }
  double mean() const { return n > 0 ? sum / n : 0.0; }
  double std_error() const {
    if (n < 2) return 0.0;
    const double m = mean();
    double var = (sumsq - n * m * m) / (n - 1);
    if (var < 0.0) var = 0.0;  // rounding
    return std::sqrt(var / n);
  }
};

EstimateResult estimate_f_impl(const DenseUnitary& w, const std::string& p_a,
                               const std::string& p_b, const EstimatorConfig& cfg,
                               std::mt19937_64& rng) {
  const int qubits = qubits_of(w);
  check_pauli_word(p_a, qubits);
  check_pauli_word(p_b, qubits);
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  std::uniform_int_distribution<std::uint64_t> draw_x(0, dim - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  RunningMean acc;
  for (int i = 0; i < cfg.n2; ++i) {
    const std::uint64_t x = draw_x(rng);
    const PauliAction act = pauli_action(p_b, x);
    const std::uint64_t y = x ^ act.flip_mask;
    const cd alpha = act.phase;
    if (std::abs(std::norm(alpha) - 1.0) > 1e-12 ||
        std::min(std::abs(alpha.real()), std::abs(alpha.imag())) > 1e-12) {
      throw IntegrityError("estimator: Pauli phase is not in {+-1, +-i}");
    }

    double val = 0.0;
    if (std::abs(alpha.imag()) < 0.5) {  // alpha = +-1: only Re<y|M|x> needed
      double re;
      if (y == x) {
        re = sample_expectation(w.col(static_cast<Eigen::Index>(x)), p_a, cfg.n1, rng);
      } else {
        const Eigen::VectorXcd plus =
            (w.col(static_cast<Eigen::Index>(x)) + w.col(static_cast<Eigen::Index>(y))) *
            inv_sqrt2;
        const Eigen::VectorXcd minus =
            (w.col(static_cast<Eigen::Index>(x)) - w.col(static_cast<Eigen::Index>(y))) *
            inv_sqrt2;
        re = 0.5 * (sample_expectation(plus, p_a, cfg.n1, rng) -
                    sample_expectation(minus, p_a, cfg.n1, rng));
      }
      val = alpha.real() * re;
    } else {  // alpha = +-i: only Im<y|M|x>; a Y letter flipped a bit, so y != x
      const cd im_unit(0.0, 1.0);
      const Eigen::VectorXcd plus =
          (w.col(static_cast<Eigen::Index>(x)) + im_unit * w.col(static_cast<Eigen::Index>(y))) *
          inv_sqrt2;
      const Eigen::VectorXcd minus =
          (w.col(static_cast<Eigen::Index>(x)) - im_unit * w.col(static_cast<Eigen::Index>(y))) *
          inv_sqrt2;
      const double im = 0.5 * (sample_expectation(plus, p_a, cfg.n1, rng) -
                               sample_expectation(minus, p_a, cfg.n1, rng));
      // Re[alpha z] = -Im(alpha) Im(z) for purely imaginary alpha.
      val = -alpha.imag() * im;
    }
    acc.add(val);
  }
  return {acc.mean(), acc.std_error()};
}

std::string single_site_word(int qubits, int j, char letter) {
  std::string word(static_cast<std::size_t>(qubits), 'I');
  word[static_cast<std::size_t>(j - 1)] = letter;
  return word;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (n1 < 1 || n2 < 1 || n3 < 1) {
    throw std::invalid_argument("estimator: shot counts N1, N2, N3 must all be positive");
  }
}

double exact_bell_pauli_expectation(const DenseUnitary& w, const std::string& p_a,
                                    const std::string& p_b) {
  const int qubits = qubits_of(w);
  check_pauli_word(p_a, qubits);
  check_pauli_word(p_b, qubits);
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  // 2^{-L} Tr[P_B^T M] = 2^{-L} sum_x alpha_x <y_x|M|x>, M = W^dag P_A W.
  cd acc = 0.0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    const PauliAction act = pauli_action(p_b, x);
    const std::uint64_t y = x ^ act.flip_mask;
    // <y|W^dag P_A W|x> = (W col y)^dag (P_A applied to W col x)
    const Eigen::VectorXcd wx = w.col(static_cast<Eigen::Index>(x));
    cd elem = 0.0;
    for (std::uint64_t z = 0; z < dim; ++z) {
      const PauliAction pa = pauli_action(p_a, z);
      elem += std::conj(w(static_cast<Eigen::Index>(z ^ pa.flip_mask),
                          static_cast<Eigen::Index>(y))) *
              pa.phase * wx[static_cast<Eigen::Index>(z)];
    }
    acc += act.phase * elem;
  }
  acc /= static_cast<double>(dim);
  if (std::abs(acc.imag()) > 1e-10) {
    throw IntegrityError("exact_bell_pauli_expectation: imaginary residue " +
                         std::to_string(acc.imag()));
  }
  return acc.real();
}

EstimateResult estimate_F(const DenseUnitary& w, const std::string& p_a, const std::string& p_b,
                          const EstimatorConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  return estimate_f_impl(w, p_a, p_b, cfg, rng);
}

EstimateResult estimate_lhst_j(const DenseUnitary& u, const DenseUnitary& v, int j,
                               const EstimatorConfig& cfg) {
  cfg.validate();
  const int qubits = qubits_of(u);
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("estimate_lhst_j: mismatched unitary shapes");
  }
  if (j < 1 || j > qubits) throw std::invalid_argument("estimate_lhst_j: site out of range");
  const DenseUnitary w = u * v.adjoint();
  std::mt19937_64 rng(cfg.seed);
  const EstimateResult fxx =
      estimate_f_impl(w, single_site_word(qubits, j, 'X'), single_site_word(qubits, j, 'X'), cfg,
                      rng);
  const EstimateResult fyy =
      estimate_f_impl(w, single_site_word(qubits, j, 'Y'), single_site_word(qubits, j, 'Y'), cfg,
                      rng);
  const EstimateResult fzz =
      estimate_f_impl(w, single_site_word(qubits, j, 'Z'), single_site_word(qubits, j, 'Z'), cfg,
                      rng);
  // <Pi_j> = (1/4)(1 + F_XX - F_YY + F_ZZ); the -YY sign comes from the
  // transpose on the B side of the Bell state.
  const double estimate = 1.0 - 0.25 * (1.0 + fxx.estimate - fyy.estimate + fzz.estimate);
  const double std_error = 0.25 * std::sqrt(fxx.std_error * fxx.std_error +
                                            fyy.std_error * fyy.std_error +
                                            fzz.std_error * fzz.std_error);
  return {estimate, std_error};
}

EstimateResult estimate_hst(const DenseUnitary& u, const DenseUnitary& v,
                            const EstimatorConfig& cfg) {
  cfg.validate();
  const int qubits = qubits_of(u);
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("estimate_hst: mismatched unitary shapes");
  }
  const DenseUnitary w = u * v.adjoint();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> draw_letter(0, 3);
  const char letters[4] = {'I', 'X', 'Y', 'Z'};

  RunningMean acc;
  for (int t = 0; t < cfg.n3; ++t) {
    std::string word(static_cast<std::size_t>(qubits), 'I');
    int y_count = 0;
    for (int s = 0; s < qubits; ++s) {
      const char c = letters[draw_letter(rng)];
      word[static_cast<std::size_t>(s)] = c;
      if (c == 'Y') ++y_count;
    }
    const double sign = (y_count % 2 == 0) ? 1.0 : -1.0;
    const EstimateResult f = estimate_f_impl(w, word, word, cfg, rng);
    acc.add(sign * f.estimate);
  }
  return {1.0 - acc.mean(), acc.std_error()};
}

}  // namespace lvqc
