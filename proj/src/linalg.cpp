#include "zonoid/linalg.hpp"

#include <sstream>

#include "zonoid/error.hpp"

namespace zonoid
{

double asymmetry(const Matrix& a)
{
    require(a.rows() == a.cols(), "matrix must be square");
    if (a.size() == 0)
        return 0.0;
    return (a - a.transpose()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& a)
{
    Matrix sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Matrix psd_factor(const Matrix& a, double psd_tol)
{
    require(a.rows() == a.cols(), "covariance must be square");
    Matrix sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    Vector values = solver.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i)
    {
        if (values[i] < -psd_tol)
        {
            std::ostringstream msg;
            msg << "covariance is not positive semidefinite (eigenvalue "
                << values[i] << ")";
            throw ConfigError(msg.str());
        }
        values[i] = values[i] < 0 ? 0.0 : std::sqrt(values[i]);
    }
    return solver.eigenvectors() * values.asDiagonal();
}

double max_abs_diff(const Matrix& a, const Matrix& b)
{
    require(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch");
    if (a.size() == 0)
        return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace zonoid
