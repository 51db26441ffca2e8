#pragma once

#include <Eigen/Dense>

namespace zonoid
{

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Max |A - A^T| entry.
double asymmetry(const Matrix& a);

/*!
 * Factor a symmetric PSD matrix as A = L L^T using the spectral
 * decomposition. Eigenvalues in [-psd_tol, 0) are clipped to zero; anything
 * more negative throws ConfigError. The input is symmetrised first.
 */
Matrix psd_factor(const Matrix& a, double psd_tol = kPsdTol);

/// Smallest eigenvalue of the symmetrised matrix.
double min_eigenvalue(const Matrix& a);

/// Max absolute entry of a - b (matrices must share a shape).
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace zonoid
