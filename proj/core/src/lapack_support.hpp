#pragma once

// Thin wrappers around the LAPACKE drivers we lean on (divide-and-conquer
// eigensolvers and SVD), with pure-Eigen fallbacks when LAPACKE is absent.
// On this problem mix the direct LAPACKE calls are markedly faster than
// Eigen's built-in solvers, which dominate TEBD and propagator setup time.

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#ifdef LVQC_HAVE_LAPACKE
// Make LAPACKE use std::complex directly; must precede the include.
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace lvqc::detail {

// Eigendecomposition of a real symmetric matrix. `a` is overwritten with the
// eigenvectors (columns); returns the ascending eigenvalues.
inline Eigen::VectorXd symmetric_eigen_inplace(Eigen::MatrixXd& a) {
  const auto n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("symmetric_eigen: matrix must be square");
  Eigen::VectorXd w(n);
#ifdef LVQC_HAVE_LAPACKE
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L',
                                         static_cast<lapack_int>(n), a.data(),
                                         static_cast<lapack_int>(n), w.data());
  if (info != 0) throw std::runtime_error("LAPACKE_dsyevd failed");
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed");
  w = es.eigenvalues();
  a = es.eigenvectors();
#endif
  return w;
}

// Eigendecomposition of a complex Hermitian matrix, same in-place contract.
inline Eigen::VectorXd hermitian_eigen_inplace(Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("hermitian_eigen: matrix must be square");
  Eigen::VectorXd w(n);
#ifdef LVQC_HAVE_LAPACKE
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L',
                                         static_cast<lapack_int>(n), a.data(),
                                         static_cast<lapack_int>(n), w.data());
  if (info != 0) throw std::runtime_error("LAPACKE_zheevd failed");
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolver failed");
  w = es.eigenvalues();
  a = es.eigenvectors();
#endif
  return w;
}

struct ThinSvd {
  Eigen::MatrixXcd u;   // m x r
  Eigen::VectorXd s;    // r, descending
  Eigen::MatrixXcd vh;  // r x n (already the adjoint)
};

// Economy-size SVD a = u * diag(s) * vh. `a` is destroyed.
inline ThinSvd thin_svd_inplace(Eigen::MatrixXcd& a) {
  const auto m = a.rows();
  const auto n = a.cols();
  const auto r = std::min(m, n);
  ThinSvd out;
  out.s.resize(r);
#ifdef LVQC_HAVE_LAPACKE
  out.u.resize(m, r);
  out.vh.resize(r, n);
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'S', static_cast<lapack_int>(m), static_cast<lapack_int>(n), a.data(),
      static_cast<lapack_int>(m), out.s.data(), out.u.data(), static_cast<lapack_int>(m),
      out.vh.data(), static_cast<lapack_int>(r));
  if (info != 0) throw std::runtime_error("LAPACKE_zgesdd failed");
#else
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.u = svd.matrixU();
  out.s = svd.singularValues();
  out.vh = svd.matrixV().adjoint();
#endif
  return out;
}

}  // namespace lvqc::detail
