#include <dflat/deform.hpp>

#include <cmath>

namespace dflat {

namespace {

template <Scalar T>
T log_of(T const& v)
{
    using std::log;
    return log(v);
}

/// Shared per-point data of every stage: a, b, t = b^2 and the checked factor 1 - kappa t.
template <Scalar T>
struct StageBase
{
    Mat<T> a;
    Vec<T> b;
    T t;
    T kappa;
};

template <Scalar T>
StageBase<T> stage_base(MetricField const& alpha, OneFormField const& beta, DeformationProfile const& p,
                        std::span<T const> x)
{
    StageBase<T> s{alpha(x), beta(x), T(0.0), T(0.0)};
    s.t = squared_norm(s.a, s.b);
    s.kappa = p.kappa(s.t);
    if (!(value_of(T(1.0 - s.kappa * s.t)) > 0.0))
        throw PositivityError("deformation violates 1 - kappa b^2 > 0 (b^2 = " + std::to_string(value_of(s.t)) + ")");
    return s;
}

template <Scalar T>
Mat<T> stretched(StageBase<T> const& s)
{
    int const n = s.a.size();
    Mat<T> out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = s.a(i, j) - s.kappa * s.b[i] * s.b[j];
    return out;
}

}  // namespace

DeformationProfile DeformationProfile::identity()
{
    return constant(0.0, 0.0, 1.0);
}

DeformationProfile DeformationProfile::navigation()
{
    DeformationProfile p;
    p.name = "navigation";
    p.kappa = UnaryFn::constant(1.0);
    p.dkappa = UnaryFn::constant(0.0);
    p.rho = UnaryFn::from([]<class T>(T const& t) { return 0.5 * log_of(T(1.0 - t)); });
    p.drho = UnaryFn::from([]<class T>(T const& t) { return -0.5 / (1.0 - t); });
    p.nu = UnaryFn::from([]<class T>(T const& t) { return t - 1.0; });
    p.dnu = UnaryFn::constant(1.0);
    return p;
}

DeformationProfile DeformationProfile::kappa_zero()
{
    DeformationProfile p;
    p.name = "kappa0";
    p.kappa = UnaryFn::constant(0.0);
    p.dkappa = UnaryFn::constant(0.0);
    p.rho = UnaryFn::from([]<class T>(T const& t) { return 0.25 * log_of(T(1.0 - t)); });
    p.drho = UnaryFn::from([]<class T>(T const& t) { return -0.25 / (1.0 - t); });
    p.nu = UnaryFn::from([]<class T>(T const& t) {
        using std::pow;
        return pow(T(1.0 - t), -0.25);
    });
    p.dnu = UnaryFn::from([]<class T>(T const& t) {
        using std::pow;
        return 0.25 * pow(T(1.0 - t), -1.25);
    });
    return p;
}

DeformationProfile DeformationProfile::constant(double kappa, double rho, double nu)
{
    DeformationProfile p;
    p.name = (kappa == 0.0 && rho == 0.0 && nu == 1.0) ? "identity" : "constant";
    p.kappa = UnaryFn::constant(kappa);
    p.dkappa = UnaryFn::constant(0.0);
    p.rho = UnaryFn::constant(rho);
    p.drho = UnaryFn::constant(0.0);
    p.nu = UnaryFn::constant(nu);
    p.dnu = UnaryFn::constant(0.0);
    return p;
}

DeformationProfile DeformationProfile::csc_conformal(double mu, double lambda)
{
    if (lambda == 0.0)
        throw ParameterError("csc_conformal profile needs lambda != 0");
    double const l2 = lambda * lambda;
    DeformationProfile p;
    p.name = "csc_conformal";
    p.kappa = UnaryFn::constant(0.0);
    p.dkappa = UnaryFn::constant(0.0);
    auto rho = [l2, mu]<class T>(T const& t) { return 0.25 * (std::log(l2) - log_of(T(l2 - mu * t))); };
    auto drho = [l2, mu]<class T>(T const& t) { return mu / (4.0 * (l2 - mu * t)); };
    p.rho = UnaryFn::from(rho);
    p.drho = UnaryFn::from(drho);
    p.nu = UnaryFn::from([rho]<class T>(T const& t) {
        using std::exp;
        return exp(rho(t));
    });
    p.dnu = UnaryFn::from([rho, drho]<class T>(T const& t) {
        using std::exp;
        return drho(t) * exp(rho(t));
    });
    return p;
}

AlphaBeta const& DeformedData::at(Stage s) const
{
    switch (s) {
    case Stage::stretch: return tilde;
    case Stage::conformal: return hat;
    default: return bar;
    }
}

DeformedData deform(MetricField const& alpha, OneFormField const& beta, DeformationProfile const& profile)
{
    int const n = alpha.dim();
    DeformedData out;
    out.tilde.alpha = MetricField::from(n, [alpha, beta, profile]<class T>(std::span<T const> x) {
        return stretched(stage_base(alpha, beta, profile, x));
    });
    out.tilde.beta = beta;
    out.hat.alpha = MetricField::from(n, [alpha, beta, profile, n]<class T>(std::span<T const> x) {
        using std::exp;
        auto const s = stage_base(alpha, beta, profile, x);
        Mat<T> m = stretched(s);
        T const scale = exp(2.0 * profile.rho(s.t));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = scale * m(i, j);
        return m;
    });
    out.hat.beta = beta;
    out.bar.alpha = out.hat.alpha;
    out.bar.beta = OneFormField::from(n, [alpha, beta, profile]<class T>(std::span<T const> x) {
        auto s = stage_base(alpha, beta, profile, x);
        T const nu = profile.nu(s.t);
        if (value_of(nu) == 0.0)
            throw PositivityError("deformation factor nu vanishes");
        for (auto& v : s.b)
            v = nu * v;
        return s.b;
    });
    return out;
}

std::array<double, 3> profile_conditions(DeformationProfile const& p, double t)
{
    double const k = p.kappa(t);
    return {k * k - k + p.dkappa(t) * (1.0 - t), 1.0 + k + 4.0 * p.drho(t) * (1.0 - t),
            (5.0 * k - 1.0) * p.nu(t) + 4.0 * (1.0 - t) * p.dnu(t)};
}

LemmaInputs lemma_inputs(MetricField const& alpha, OneFormField const& beta, DeformationProfile const& profile,
                         ChartPoint const& x, TangentVector const& y)
{
    LemmaInputs in;
    in.d = covariant_decomposition(alpha, beta, x, y);
    in.spray = riemann_spray(alpha, x, y);
    in.y = y.vec();
    double const t = in.d.b2;
    in.kappa = profile.kappa(t);
    in.dkappa = profile.dkappa(t);
    in.rho = profile.rho(t);
    in.drho = profile.drho(t);
    in.nu = profile.nu(t);
    in.dnu = profile.dnu(t);
    return in;
}

StageQuantities lemma1_predicted(LemmaInputs const& in)
{
    auto const& d = in.d;
    int const n = d.a.size();
    double const k = in.kappa;
    double const dk = in.dkappa;
    double const q = 1.0 - k * d.b2;
    if (!(q > 0.0))
        throw PositivityError("stretch violates 1 - kappa b^2 > 0");
    StageQuantities out;
    out.spray.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double const first = 2.0 * q * d.beta * d.s_up_0[i] + d.r00 * d.b_up[i] + 2.0 * k * d.s0 * d.beta * d.b_up[i];
        double const second = q * d.beta * d.beta * (d.r_up[i] + d.s_up[i]) + k * d.r * d.beta * d.beta * d.b_up[i] -
                              2.0 * (d.r0 + d.s0) * d.beta * d.b_up[i];
        out.spray[i] = in.spray[i] - k / (2.0 * q) * first + dk / (2.0 * q) * second;
    }
    out.bij = Mat<double>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double const first = d.b2 * d.rij(i, j) + d.b[i] * d.s_i[j] + d.b[j] * d.s_i[i];
            double const second = d.r * d.b[i] * d.b[j] - d.b2 * d.b[i] * (d.r_i[j] + d.s_i[j]) -
                                  d.b2 * d.b[j] * (d.r_i[i] + d.s_i[i]);
            out.bij(i, j) = d.bij(i, j) + k / q * first - dk / q * second;
        }
    return out;
}

StageQuantities lemma2_predicted(LemmaInputs const& in, StageQuantities const& stretched_stage)
{
    auto const& d = in.d;
    int const n = d.a.size();
    double const k = in.kappa;
    double const q = 1.0 - k * d.b2;
    double const dr = in.drho;
    StageQuantities out;
    out.spray.resize(static_cast<std::size_t>(n));
    double const alpha_t2 = d.alpha2 - k * d.beta * d.beta;
    for (int i = 0; i < n; ++i)
        out.spray[i] = stretched_stage.spray[i] +
                       dr * (2.0 * (d.r0 + d.s0) * in.y[i] -
                             alpha_t2 * (d.r_up[i] + d.s_up[i] + k / q * d.r * d.b_up[i]));
    out.bij = Mat<double>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.bij(i, j) = stretched_stage.bij(i, j) -
                            2.0 * dr *
                                (d.b[i] * (d.r_i[j] + d.s_i[j]) + d.b[j] * (d.r_i[i] + d.s_i[i]) -
                                 d.r / q * (d.a(i, j) - k * d.b[i] * d.b[j]));
    return out;
}

StageQuantities lemma3_predicted(LemmaInputs const& in, StageQuantities const& conformal_stage)
{
    auto const& d = in.d;
    int const n = d.a.size();
    StageQuantities out;
    out.spray = conformal_stage.spray;
    out.bij = Mat<double>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.bij(i, j) = in.nu * conformal_stage.bij(i, j) + 2.0 * in.dnu * d.b[i] * (d.r_i[j] + d.s_i[j]);
    return out;
}

StageQuantities direct_stage(DeformedData const& data, Stage stage, ChartPoint const& x, TangentVector const& y)
{
    auto const& ab = data.at(stage);
    StageQuantities out;
    out.spray = riemann_spray(ab.alpha, x, y);
    out.bij = covariant_derivative(ab.alpha, ab.beta, x.coords());
    return out;
}

double stage_mismatch(StageQuantities const& a, StageQuantities const& b)
{
    double const g = distance2(a.spray, b.spray) / (1.0 + norm2(b.spray));
    double const m = frobenius_distance(a.bij, b.bij) / (1.0 + frobenius_norm(b.bij));
    return std::max(g, m);
}

AlphaBeta reverse_kappa0(MetricField const& alpha_bar, OneFormField const& beta_bar)
{
    int const n = alpha_bar.dim();
    AlphaBeta out;
    out.alpha = MetricField::from(n, [alpha_bar, beta_bar, n]<class T>(std::span<T const> x) {
        using std::sqrt;
        Mat<T> a = alpha_bar(x);
        T const scale = sqrt(T(1.0 + squared_norm(a, beta_bar(x))));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = scale * a(i, j);
        return a;
    });
    out.beta = OneFormField::from(n, [alpha_bar, beta_bar]<class T>(std::span<T const> x) {
        using std::pow;
        Vec<T> b = beta_bar(x);
        T const scale = pow(T(1.0 + squared_norm(alpha_bar(x), b)), -0.25);
        for (auto& v : b)
            v = scale * v;
        return b;
    });
    return out;
}

}  // namespace dflat
