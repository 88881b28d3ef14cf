#include <dflat/engine.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dflat {

namespace {

std::vector<double> checked(std::vector<double> coords, char const* what, bool need_dim)
{
    if (need_dim && coords.size() < 2)
        throw ParameterError(std::string(what) + ": dimension must be at least 2");
    for (double c : coords)
        if (!std::isfinite(c))
            throw ParameterError(std::string(what) + ": non-finite coordinate");
    return coords;
}

struct Variable
{
    bool is_y;
    int index;
};

std::vector<Variable> variables(int n, std::span<int const> xs, std::span<int const> ys)
{
    std::vector<Variable> vars;
    for (int i : xs) {
        if (i < 0 || i >= n)
            throw ParameterError("x index out of range");
        vars.push_back({false, i});
    }
    for (int i : ys) {
        if (i < 0 || i >= n)
            throw ParameterError("y index out of range");
        vars.push_back({true, i});
    }
    if (static_cast<int>(vars.size()) > max_jet_depth)
        throw UnsupportedOrderError("derivative order " + std::to_string(vars.size()) + " exceeds supported depth " +
                                    std::to_string(max_jet_depth));
    return vars;
}

template <int K>
double mixed_partial(ScalarField const& f, ChartPoint const& x, TangentVector const& y,
                     std::vector<Variable> const& vars)
{
    using S = JetOf<K>;
    int const n = x.dim();
    Vec<S> xs;
    Vec<S> ys;
    for (int i = 0; i < n; ++i) {
        unsigned xmask = 0;
        unsigned ymask = 0;
        for (int level = 0; level < K; ++level) {
            auto const& v = vars[static_cast<std::size_t>(level)];
            if (v.index == i)
                (v.is_y ? ymask : xmask) |= 1u << level;
        }
        xs.push_back(seeded<S>(x[i], xmask));
        ys.push_back(seeded<S>(y[i], ymask));
    }
    S const r = f(std::span<S const>(xs), std::span<S const>(ys));
    double const d = top_derivative(r);
    if (!std::isfinite(d) || !std::isfinite(value_of(r)))
        throw EvaluationError("non-finite field derivative", x.vec(), y.vec());
    return d;
}

}  // namespace

ChartPoint::ChartPoint(std::vector<double> coords) : coords_(checked(std::move(coords), "ChartPoint", true)) {}

double ChartPoint::norm() const
{
    return norm2(coords_);
}

TangentVector::TangentVector(std::vector<double> coords)
    : coords_(checked(std::move(coords), "TangentVector", false))
{}

double TangentVector::norm() const
{
    return norm2(coords_);
}

void require_slit(TangentVector const& y)
{
    if (y.norm() < min_tangent_norm)
        throw DomainError("tangent vector too close to zero: " + format_point(y.vec()));
}

double jet_derivative(ScalarField const& f, ChartPoint const& x, TangentVector const& y, std::span<int const> x_indices,
                      std::span<int const> y_indices)
{
    if (x.dim() != y.dim())
        throw ParameterError("point and vector dimensions differ");
    require_slit(y);
    auto const vars = variables(x.dim(), x_indices, y_indices);
    switch (vars.size()) {
    case 0: return mixed_partial<0>(f, x, y, vars);
    case 1: return mixed_partial<1>(f, x, y, vars);
    case 2: return mixed_partial<2>(f, x, y, vars);
    case 3: return mixed_partial<3>(f, x, y, vars);
    default: return mixed_partial<4>(f, x, y, vars);
    }
}

double default_fd_step(int order)
{
    return std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (std::max(order, 1) + 6)) / 3.0;
}

namespace {

double central(ScalarField const& f, std::vector<double>& xs, std::vector<double>& ys,
               std::vector<Variable> const& vars, std::size_t level, double h, ChartPoint const& x0,
               TangentVector const& y0)
{
    if (level == vars.size()) {
        double const v = f(std::span<double const>(xs), std::span<double const>(ys));
        if (!std::isfinite(v))
            throw EvaluationError("non-finite field value in finite differences", x0.vec(), y0.vec());
        return v;
    }
    auto const& var = vars[level];
    auto& coords = var.is_y ? ys : xs;
    double const base = var.is_y ? y0[var.index] : x0[var.index];
    double const step = h * std::max(1.0, std::abs(base));
    double const saved = coords[static_cast<std::size_t>(var.index)];
    coords[static_cast<std::size_t>(var.index)] = saved + step;
    double const plus = central(f, xs, ys, vars, level + 1, h, x0, y0);
    coords[static_cast<std::size_t>(var.index)] = saved - step;
    double const minus = central(f, xs, ys, vars, level + 1, h, x0, y0);
    coords[static_cast<std::size_t>(var.index)] = saved;
    return (plus - minus) / (2.0 * step);
}

}  // namespace

double fd_derivative(ScalarField const& f, ChartPoint const& x, TangentVector const& y, std::span<int const> x_indices,
                     std::span<int const> y_indices, double step)
{
    if (x.dim() != y.dim())
        throw ParameterError("point and vector dimensions differ");
    require_slit(y);
    auto const vars = variables(x.dim(), x_indices, y_indices);
    double const h = step > 0.0 ? step : default_fd_step(static_cast<int>(vars.size()));
    std::vector<double> xs = x.vec();
    std::vector<double> ys = y.vec();
    if (vars.empty())
        return central(f, xs, ys, vars, 0, h, x, y);
    double const d1 = central(f, xs, ys, vars, 0, h, x, y);
    double const d2 = central(f, xs, ys, vars, 0, 0.5 * h, x, y);
    double const d4 = central(f, xs, ys, vars, 0, 0.25 * h, x, y);
    double const r1 = (4.0 * d2 - d1) / 3.0;
    double const r2 = (4.0 * d4 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

}  // namespace dflat
