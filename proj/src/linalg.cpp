#include <dflat/linalg.hpp>

#include <Eigen/Dense>

namespace dflat {

double min_eigenvalue(Mat<double> const& a)
{
    int const n = a.size();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = 0.5 * (a(i, j) + a(j, i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double frobenius_distance(Mat<double> const& a, Mat<double> const& b)
{
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) {
            double const d = a(i, j) - b(i, j);
            s += d * d;
        }
    return std::sqrt(s);
}

double frobenius_norm(Mat<double> const& a)
{
    return frobenius_distance(a, Mat<double>(a.size()));
}

double norm2(std::span<double const> v)
{
    double s = 0.0;
    for (double e : v)
        s += e * e;
    return std::sqrt(s);
}

double distance2(std::span<double const> a, std::span<double const> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double const d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace dflat
