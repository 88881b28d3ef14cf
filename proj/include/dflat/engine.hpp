#pragma once

/**
    \file
    \brief exact mixed partials of tangent-bundle fields, plus a finite-difference oracle
*/

#include <dflat/field.hpp>

#include <span>
#include <vector>

namespace dflat {

/// Local coordinates x^i of a point in an open subset of R^n.
class ChartPoint
{
public:
    ChartPoint() = default;
    /// Throws ParameterError unless n >= 2 and all entries are finite.
    explicit ChartPoint(std::vector<double> coords);

    int dim() const noexcept { return static_cast<int>(coords_.size()); }
    std::span<double const> coords() const noexcept { return coords_; }
    std::vector<double> const& vec() const noexcept { return coords_; }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    double norm() const;

private:
    std::vector<double> coords_;
};

/// Components y^i of a tangent vector.
class TangentVector
{
public:
    TangentVector() = default;
    explicit TangentVector(std::vector<double> coords);

    int dim() const noexcept { return static_cast<int>(coords_.size()); }
    std::span<double const> coords() const noexcept { return coords_; }
    std::vector<double> const& vec() const noexcept { return coords_; }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    double norm() const;

private:
    std::vector<double> coords_;
};

/// Vectors shorter than this are refused: Finsler metrics are only smooth off the zero section.
inline constexpr double min_tangent_norm = 1e-8;

/// Throws DomainError when |y| < min_tangent_norm.
void require_slit(TangentVector const& y);

/**
    Exact mixed partial of f at (x, y) with respect to the listed x- and y-coordinates, evaluated on nested jets.

    Total order is limited to max_jet_depth; larger orders throw UnsupportedOrderError. Non-finite results throw
    EvaluationError carrying the probe.
*/
double jet_derivative(ScalarField const& f, ChartPoint const& x, TangentVector const& y, std::span<int const> x_indices,
                      std::span<int const> y_indices);

inline double jet_derivative(ScalarField const& f, ChartPoint const& x, TangentVector const& y,
                             std::initializer_list<int> x_indices, std::initializer_list<int> y_indices)
{
    return jet_derivative(f, x, y, std::span<int const>(x_indices.begin(), x_indices.size()),
                          std::span<int const>(y_indices.begin(), y_indices.size()));
}

/// Step used when fd_derivative is given step <= 0: eps^(1/(k+6)) / 3 for order k.
double default_fd_step(int order);

/**
    Central-difference estimate of the same partial, two Richardson extrapolations on top (h, h/2, h/4). The step on
    coordinate v is step * max(1, |v|). A non-positive step selects default_fd_step(order).
*/
double fd_derivative(ScalarField const& f, ChartPoint const& x, TangentVector const& y, std::span<int const> x_indices,
                     std::span<int const> y_indices, double step = 0.0);

inline double fd_derivative(ScalarField const& f, ChartPoint const& x, TangentVector const& y,
                            std::initializer_list<int> x_indices, std::initializer_list<int> y_indices,
                            double step = 0.0)
{
    return fd_derivative(f, x, y, std::span<int const>(x_indices.begin(), x_indices.size()),
                         std::span<int const>(y_indices.begin(), y_indices.size()), step);
}

/// Lifts every coordinate of v one jet level, giving it the tangent `direction` (zero when empty).
template <Scalar T>
Vec<Jet<T>> lift_all(std::span<T const> v, std::span<T const> direction = {})
{
    Vec<Jet<T>> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.emplace_back(v[i], direction.empty() ? T(0.0) : direction[i]);
    return out;
}

/// Lifts v one jet level with unit tangent on coordinate `axis` (no tangent when axis < 0).
template <Scalar T>
Vec<Jet<T>> lift_axis(std::span<T const> v, int axis)
{
    Vec<Jet<T>> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.emplace_back(v[i], static_cast<int>(i) == axis ? T(1.0) : T(0.0));
    return out;
}

template <Scalar T>
Vec<T> primal(Vec<Jet<T>> const& v)
{
    Vec<T> out;
    out.reserve(v.size());
    for (auto const& e : v)
        out.push_back(e.f);
    return out;
}

template <Scalar T>
Vec<T> tangent(Vec<Jet<T>> const& v)
{
    Vec<T> out;
    out.reserve(v.size());
    for (auto const& e : v)
        out.push_back(e.df);
    return out;
}

template <Scalar T>
Mat<T> primal(Mat<Jet<T>> const& m)
{
    Mat<T> out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            out(i, j) = m(i, j).f;
    return out;
}

template <Scalar T>
Mat<T> tangent(Mat<Jet<T>> const& m)
{
    Mat<T> out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            out(i, j) = m(i, j).df;
    return out;
}

template <Scalar T>
Vec<T> promote(std::span<double const> v)
{
    Vec<T> out;
    out.reserve(v.size());
    for (double d : v)
        out.emplace_back(d);
    return out;
}

}  // namespace dflat
