#pragma once

/**
    \file
    \brief Randers metrics, Finsler fundamental tensor and spray, dual-flatness residual, flag curvature, navigation
*/

#include <dflat/engine.hpp>
#include <dflat/field.hpp>
#include <dflat/riemann.hpp>

#include <limits>
#include <vector>

namespace dflat {

/// ||beta||_alpha must stay below 1 - this at every admitted point.
inline constexpr double randers_margin = 1e-6;

/// F = alpha + beta with ||beta||_alpha < 1.
class RandersMetric
{
public:
    RandersMetric() = default;
    RandersMetric(MetricField alpha, OneFormField beta, double radius = std::numeric_limits<double>::infinity());

    int dim() const noexcept { return alpha_.dim(); }
    MetricField const& alpha() const noexcept { return alpha_; }
    OneFormField const& beta() const noexcept { return beta_; }
    /// Radius of the coordinate ball the metric lives on (infinite for all of R^n).
    double radius() const noexcept { return radius_; }

    /// The Finsler function alpha + beta.
    ScalarField finsler() const;

    /// b(x) = ||beta||_alpha
    double b_norm(ChartPoint const& x) const;

    /// Throws DomainError when x is outside the ball or b(x) >= 1 - randers_margin.
    void check_admitted(ChartPoint const& x) const;

private:
    MetricField alpha_;
    OneFormField beta_;
    double radius_ = std::numeric_limits<double>::infinity();
};

/// Zermelo data (h, W) with |W|_h < 1.
class NavigationData
{
public:
    NavigationData() = default;
    NavigationData(MetricField h, VectorField wind, double radius = std::numeric_limits<double>::infinity());

    int dim() const noexcept { return h_.dim(); }
    MetricField const& h() const noexcept { return h_; }
    VectorField const& wind() const noexcept { return wind_; }
    double radius() const noexcept { return radius_; }

    /// W^flat_i = h_ij W^j
    OneFormField wind_flat() const;
    /// |W|_h
    double wind_norm(ChartPoint const& x) const;

private:
    MetricField h_;
    VectorField wind_;
    double radius_ = std::numeric_limits<double>::infinity();
};

/// h_ij = (1 - b^2)(a_ij - b_i b_j), W^flat = -(1 - b^2) beta. Evaluation throws DomainError where b >= 1 - margin.
NavigationData to_navigation(RandersMetric const& randers);

/// a_ij = (l h_ij + W_i W_j) / l^2, b_i = -W_i / l with l = 1 - |W|_h^2 and W_i = W^flat_i.
RandersMetric from_navigation(NavigationData const& nav);

// -- Finsler quantities, generic over jet scalars -------------------------------------------------------------------

namespace detail {

template <Scalar T>
Jet<Jet<T>> bilift(T const& v, T const& outer, T const& inner)
{
    return Jet<Jet<T>>(Jet<T>(v, inner), Jet<T>(outer, T(0.0)));
}

template <Scalar T>
Jet<Jet<T>> eval_square(ScalarField const& f, Vec<Jet<Jet<T>>> const& x, Vec<Jet<Jet<T>>> const& y)
{
    using JJ = Jet<Jet<T>>;
    JJ const v = f(std::span<JJ const>(x), std::span<JJ const>(y));
    return v * v;
}

}  // namespace detail

/// g_ij = 1/2 [F^2]_{y^i y^j}
template <Scalar T>
Mat<T> fundamental_tensor(ScalarField const& F, std::span<T const> x, std::span<T const> y)
{
    if constexpr (jet_depth_v<T> + 2 > max_jet_depth) {
        throw_depth_exceeded("fundamental_tensor");
    }
    else {
        using JJ = Jet<Jet<T>>;
        int const n = static_cast<int>(x.size());
        T const zero(0.0);
        T const one(1.0);
        Vec<JJ> xs;
        for (int m = 0; m < n; ++m)
            xs.push_back(detail::bilift(x[m], zero, zero));
        Mat<T> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Vec<JJ> ys;
                for (int m = 0; m < n; ++m)
                    ys.push_back(detail::bilift(y[m], m == i ? one : zero, m == j ? one : zero));
                T const v = 0.5 * detail::eval_square<T>(F, xs, ys).df.df;
                g(i, j) = v;
                g(j, i) = v;
            }
        return g;
    }
}

/// Pieces of the spray and of the dual-flatness residual at one point.
template <class T>
struct SprayTerms
{
    Mat<T> g;             ///< fundamental tensor
    Vec<T> mixed;         ///< [F^2]_{x^k y^l} y^k
    Vec<T> grad_x;        ///< [F^2]_{x^l}
};

template <Scalar T>
SprayTerms<T> spray_terms(ScalarField const& F, std::span<T const> x, std::span<T const> y)
{
    if constexpr (jet_depth_v<T> + 2 > max_jet_depth) {
        throw_depth_exceeded("spray_terms");
    }
    else {
        using JJ = Jet<Jet<T>>;
        using J = Jet<T>;
        int const n = static_cast<int>(x.size());
        T const zero(0.0);
        T const one(1.0);
        SprayTerms<T> t;
        t.g = fundamental_tensor(F, x, y);
        // outer level moves x along y, inner level moves y^l
        Vec<JJ> xs;
        for (int m = 0; m < n; ++m)
            xs.push_back(detail::bilift(x[m], y[m], zero));
        t.mixed.resize(static_cast<std::size_t>(n));
        for (int l = 0; l < n; ++l) {
            Vec<JJ> ys;
            for (int m = 0; m < n; ++m)
                ys.push_back(detail::bilift(y[m], zero, m == l ? one : zero));
            t.mixed[l] = detail::eval_square<T>(F, xs, ys).df.df;
        }
        t.grad_x.resize(static_cast<std::size_t>(n));
        auto const yj = lift_all(y);
        for (int l = 0; l < n; ++l) {
            auto const xj = lift_axis(x, l);
            J const v = F(std::span<J const>(xj), std::span<J const>(yj));
            t.grad_x[l] = (v * v).df;
        }
        return t;
    }
}

/// G^i = 1/4 g^{il} ([F^2]_{x^k y^l} y^k - [F^2]_{x^l})
template <Scalar T>
Vec<T> finsler_spray(ScalarField const& F, std::span<T const> x, std::span<T const> y)
{
    auto const t = spray_terms(F, x, y);
    int const n = static_cast<int>(x.size());
    Mat<T> const ginv = inverse(t.g);
    Vec<T> G(static_cast<std::size_t>(n), T(0.0));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            G[i] += 0.25 * ginv(i, l) * (t.mixed[l] - t.grad_x[l]);
    return G;
}

// -- double-precision front ends ------------------------------------------------------------------------------------

/// Throws ConvexityError when g is not positive definite at the probe.
Mat<double> fundamental_tensor(ScalarField const& F, ChartPoint const& x, TangentVector const& y);

std::vector<double> finsler_spray(ScalarField const& F, ChartPoint const& x, TangentVector const& y);

struct DualFlatnessResidual
{
    std::vector<double> residual;  ///< R_l = [F^2]_{x^k y^l} y^k - 2 [F^2]_{x^l}
    double normalized = 0.0;       ///< |R| / (1 + |[F^2]_x|)
};

DualFlatnessResidual dual_flatness_residual(ScalarField const& F, ChartPoint const& x, TangentVector const& y);

/// Riemann curvature R^i_k of the spray, row i, column k.
Mat<double> spray_curvature(ScalarField const& F, ChartPoint const& x, TangentVector const& y);

/// Flag curvature K(y, u). Throws DegenerateError when u is parallel to y.
double flag_curvature(ScalarField const& F, ChartPoint const& x, TangentVector const& y, TangentVector const& u);

}  // namespace dflat
