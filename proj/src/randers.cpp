#include <dflat/randers.hpp>

#include <cmath>

namespace dflat {

namespace {

template <Scalar T>
T checked_b2(Mat<T> const& a, Vec<T> const& b)
{
    T const b2 = squared_norm(a, b);
    double const lim = (1.0 - randers_margin) * (1.0 - randers_margin);
    if (!(value_of(b2) < lim))
        throw DomainError("Randers condition ||beta||_alpha < 1 violated (b^2 = " + std::to_string(value_of(b2)) + ")");
    return b2;
}

void check_radius(ChartPoint const& x, double radius)
{
    if (!(x.norm() < radius))
        throw DomainError("point " + format_point(x.vec()) + " outside the coordinate ball of radius " +
                          std::to_string(radius));
}

}  // namespace

RandersMetric::RandersMetric(MetricField alpha, OneFormField beta, double radius)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), radius_(radius)
{
    if (alpha_.dim() != beta_.dim())
        throw ParameterError("alpha and beta dimensions differ");
}

ScalarField RandersMetric::finsler() const
{
    MetricField const a = alpha_;
    OneFormField const b = beta_;
    return ScalarField::from(dim(), [a, b]<class T>(std::span<T const> x, std::span<T const> y) {
        using std::sqrt;
        Vec<T> const bx = b(x);
        return sqrt(quadratic(a(x), y, y)) + dot(std::span<T const>(bx), y);
    });
}

double RandersMetric::b_norm(ChartPoint const& x) const
{
    return std::sqrt(squared_norm(alpha_(x.coords()), beta_(x.coords())));
}

void RandersMetric::check_admitted(ChartPoint const& x) const
{
    check_radius(x, radius_);
    if (!(b_norm(x) < 1.0 - randers_margin))
        throw DomainError("Randers condition ||beta||_alpha < 1 violated at " + format_point(x.vec()));
}

NavigationData::NavigationData(MetricField h, VectorField wind, double radius)
    : h_(std::move(h)), wind_(std::move(wind)), radius_(radius)
{
    if (h_.dim() != wind_.dim())
        throw ParameterError("h and W dimensions differ");
}

OneFormField NavigationData::wind_flat() const
{
    MetricField const h = h_;
    VectorField const w = wind_;
    return OneFormField::from(dim(), [h, w]<class T>(std::span<T const> x) { return mat_vec(h(x), w(x)); });
}

double NavigationData::wind_norm(ChartPoint const& x) const
{
    Vec<double> const w = wind_(x.coords());
    return std::sqrt(quadratic(h_(x.coords()), w));
}

NavigationData to_navigation(RandersMetric const& randers)
{
    MetricField const a = randers.alpha();
    OneFormField const b = randers.beta();
    int const n = randers.dim();
    auto h = MetricField::from(n, [a, b, n]<class T>(std::span<T const> x) {
        Mat<T> const ax = a(x);
        Vec<T> const bx = b(x);
        T const scale = 1.0 - checked_b2(ax, bx);
        Mat<T> out(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) = scale * (ax(i, j) - bx[i] * bx[j]);
        return out;
    });
    auto wind = VectorField::from(n, [a, b, h, n]<class T>(std::span<T const> x) {
        Mat<T> const ax = a(x);
        Vec<T> const bx = b(x);
        T const scale = -(1.0 - checked_b2(ax, bx));
        Vec<T> flat(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            flat[i] = scale * bx[i];
        return solve(h(x), flat);
    });
    return NavigationData(std::move(h), std::move(wind), randers.radius());
}

RandersMetric from_navigation(NavigationData const& nav)
{
    MetricField const h = nav.h();
    VectorField const w = nav.wind();
    int const n = nav.dim();
    // (lambda, W_flat) at x; throws when |W|_h >= 1 - margin
    auto parts = [h, w]<class T>(std::span<T const> x, Mat<T>& hx, Vec<T>& flat) {
        hx = h(x);
        Vec<T> const wx = w(x);
        flat = mat_vec(hx, wx);
        T const w2 = dot(flat, wx);
        double const lim = (1.0 - randers_margin) * (1.0 - randers_margin);
        if (!(value_of(w2) < lim))
            throw DomainError("navigation wind violates |W|_h < 1");
        return T(1.0 - w2);
    };
    auto alpha = MetricField::from(n, [parts, n]<class T>(std::span<T const> x) {
        Mat<T> hx;
        Vec<T> flat;
        T const lam = parts(x, hx, flat);
        Mat<T> out(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) = (lam * hx(i, j) + flat[i] * flat[j]) / (lam * lam);
        return out;
    });
    auto beta = OneFormField::from(n, [parts, n]<class T>(std::span<T const> x) {
        Mat<T> hx;
        Vec<T> flat;
        T const lam = parts(x, hx, flat);
        Vec<T> out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            out[i] = -flat[i] / lam;
        return out;
    });
    return RandersMetric(std::move(alpha), std::move(beta), nav.radius());
}

Mat<double> fundamental_tensor(ScalarField const& F, ChartPoint const& x, TangentVector const& y)
{
    require_slit(y);
    Mat<double> g = fundamental_tensor(F, x.coords(), y.coords());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
            if (!std::isfinite(g(i, j)))
                throw EvaluationError("non-finite fundamental tensor", x.vec(), y.vec());
    if (!is_positive_definite(g))
        throw ConvexityError("fundamental tensor not positive definite at x=" + format_point(x.vec()) +
                             " y=" + format_point(y.vec()));
    return g;
}

std::vector<double> finsler_spray(ScalarField const& F, ChartPoint const& x, TangentVector const& y)
{
    require_slit(y);
    return finsler_spray(F, x.coords(), y.coords());
}

DualFlatnessResidual dual_flatness_residual(ScalarField const& F, ChartPoint const& x, TangentVector const& y)
{
    require_slit(y);
    auto const t = spray_terms(F, x.coords(), y.coords());
    DualFlatnessResidual out;
    out.residual.resize(t.mixed.size());
    for (std::size_t l = 0; l < t.mixed.size(); ++l)
        out.residual[l] = t.mixed[l] - 2.0 * t.grad_x[l];
    for (double v : out.residual)
        if (!std::isfinite(v))
            throw EvaluationError("non-finite dual-flatness residual", x.vec(), y.vec());
    out.normalized = norm2(out.residual) / (1.0 + norm2(t.grad_x));
    return out;
}

Mat<double> spray_curvature(ScalarField const& F, ChartPoint const& x, TangentVector const& y)
{
    require_slit(y);
    int const n = x.dim();
    auto const xv = x.coords();
    auto const yv = y.coords();
    std::vector<double> const G = finsler_spray(F, x, y);

    Mat<double> dGdy(n);  // (i, k): dG^i / dy^k
    Mat<double> dGdx(n);  // (i, k): dG^i / dx^k
    Mat<double> xy(n);    // (i, k): y^j d2G^i / dx^j dy^k
    Mat<double> yy(n);    // (i, k): G^j d2G^i / dy^j dy^k
    for (int k = 0; k < n; ++k) {
        Vec<J2> xs;
        Vec<J2> ys;
        for (int m = 0; m < n; ++m) {
            xs.push_back(detail::bilift(xv[m], yv[m], 0.0));
            ys.push_back(detail::bilift(yv[m], 0.0, m == k ? 1.0 : 0.0));
        }
        auto const g1 = finsler_spray(F, std::span<J2 const>(xs), std::span<J2 const>(ys));
        xs.clear();
        ys.clear();
        for (int m = 0; m < n; ++m) {
            xs.push_back(detail::bilift(xv[m], 0.0, 0.0));
            ys.push_back(detail::bilift(yv[m], G[m], m == k ? 1.0 : 0.0));
        }
        auto const g2 = finsler_spray(F, std::span<J2 const>(xs), std::span<J2 const>(ys));
        auto const xk = lift_axis(xv, k);
        auto const yk = lift_all(yv);
        auto const g3 = finsler_spray(F, std::span<J1 const>(xk), std::span<J1 const>(yk));
        for (int i = 0; i < n; ++i) {
            dGdy(i, k) = g1[i].f.df;
            xy(i, k) = g1[i].df.df;
            yy(i, k) = g2[i].df.df;
            dGdx(i, k) = g3[i].df;
        }
    }
    Mat<double> R(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double v = 2.0 * dGdx(i, k) - xy(i, k) + 2.0 * yy(i, k);
            for (int j = 0; j < n; ++j)
                v -= dGdy(i, j) * dGdy(j, k);
            R(i, k) = v;
        }
    return R;
}

double flag_curvature(ScalarField const& F, ChartPoint const& x, TangentVector const& y, TangentVector const& u)
{
    Mat<double> const g = fundamental_tensor(F, x, y);
    double const f = F(x.coords(), y.coords());
    double const uu = quadratic(g, u.coords(), u.coords());
    double const yu = quadratic(g, y.coords(), u.coords());
    double const denom = f * f * uu - yu * yu;
    if (!(denom > 1e-14 * f * f * uu))
        throw DegenerateError("flag pole and transverse edge are (nearly) parallel");
    Mat<double> const R = spray_curvature(F, x, y);
    Vec<double> const Ru = mat_vec(R, u.coords());
    Vec<double> const u_low = mat_vec(g, u.coords());
    return dot(u_low, Ru) / denom;
}

}  // namespace dflat
