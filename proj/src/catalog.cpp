#include <dflat/catalog.hpp>

#include <cmath>
#include <string>

namespace dflat::catalog {

namespace {

template <Scalar T>
T sq(std::span<T const> x)
{
    return dot(x, x);
}

template <Scalar T>
void require_ball(std::span<T const> x, double radius)
{
    double s = 0.0;
    for (auto const& v : x)
        s += value_of(v) * value_of(v);
    if (!(std::sqrt(s) < radius))
        throw DomainError("point outside B^n(" + std::to_string(radius) + ")");
}

/// ((1 + m|x|^2) delta_ij - m x_i x_j) * scale
template <Scalar T>
Mat<T> csc_shape(std::span<T const> x, double m, T const& scale)
{
    int const n = static_cast<int>(x.size());
    T const q = 1.0 + m * sq(x);
    Mat<T> out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = scale * ((i == j ? q : T(0.0)) - m * x[i] * x[j]);
    return out;
}

void check_dim(int dim)
{
    if (dim < 2)
        throw ParameterError("dimension must be at least 2");
}

}  // namespace

double domain_radius(double mu)
{
    return mu < 0.0 ? 1.0 / std::sqrt(-mu) : std::numeric_limits<double>::infinity();
}

void FamilyParams::validate() const
{
    check_dim(dim);
    if (!std::isfinite(mu) || !std::isfinite(lambda))
        throw ParameterError("family parameters must be finite");
}

RandersMetric euclidean(int dim)
{
    check_dim(dim);
    return RandersMetric(MetricField::euclidean(dim), OneFormField::zero(dim));
}

RandersMetric funk(int dim, int sign)
{
    check_dim(dim);
    if (sign != 1 && sign != -1)
        throw ParameterError("Funk sign must be +1 or -1");
    double const s = sign;
    auto alpha = MetricField::from(dim, [dim]<class T>(std::span<T const> x) {
        require_ball(x, 1.0);
        T const d = 1.0 - sq(x);
        Mat<T> out(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                out(i, j) = (i == j ? 1.0 / d : T(0.0)) + x[i] * x[j] / (d * d);
        return out;
    });
    auto beta = OneFormField::from(dim, [s]<class T>(std::span<T const> x) {
        require_ball(x, 1.0);
        T const d = 1.0 - sq(x);
        Vec<T> out;
        for (auto const& v : x)
            out.push_back(s * v / d);
        return out;
    });
    return RandersMetric(std::move(alpha), std::move(beta), 1.0);
}

ScalarField funk_closed_form(int dim, int sign)
{
    check_dim(dim);
    double const s = sign;
    return ScalarField::from(dim, [s]<class T>(std::span<T const> x, std::span<T const> y) {
        using std::sqrt;
        require_ball(x, 1.0);
        T const xx = dot(x, x);
        T const yy = dot(y, y);
        T const xy = dot(x, y);
        T const d = 1.0 - xx;
        return sqrt(d * yy + xy * xy) / d + s * xy / d;
    });
}

RandersMetric example_family(FamilyParams const& p)
{
    p.validate();
    double const mu = p.mu;
    double const lam = p.lambda;
    double const r = p.radius();
    auto alpha = MetricField::from(p.dim, [mu, lam, r]<class T>(std::span<T const> x) {
        using std::sqrt;
        require_ball(x, r);
        T const xx = sq(x);
        T const q = 1.0 + (mu + lam * lam) * xx;
        T const d = 1.0 + mu * xx;
        return csc_shape(x, mu, T(sqrt(q) / (d * d)));
    });
    auto beta = OneFormField::from(p.dim, [mu, lam, r]<class T>(std::span<T const> x) {
        using std::pow;
        require_ball(x, r);
        T const xx = sq(x);
        T const scale = lam / ((1.0 + mu * xx) * pow(1.0 + (mu + lam * lam) * xx, 0.25));
        Vec<T> out;
        for (auto const& v : x)
            out.push_back(scale * v);
        return out;
    });
    return RandersMetric(std::move(alpha), std::move(beta), r);
}

ScalarField family_closed_form(FamilyParams const& p)
{
    p.validate();
    double const mu = p.mu;
    double const lam = p.lambda;
    double const r = p.radius();
    return ScalarField::from(p.dim, [mu, lam, r]<class T>(std::span<T const> x, std::span<T const> y) {
        using std::pow;
        using std::sqrt;
        require_ball(x, r);
        T const xx = dot(x, x);
        T const yy = dot(y, y);
        T const xy = dot(x, y);
        T const q4 = pow(1.0 + (mu + lam * lam) * xx, 0.25);
        T const d = 1.0 + mu * xx;
        return q4 * sqrt(d * yy - mu * xy * xy) / d + lam * xy / (d * q4);
    });
}

ScalarField alternative_family_closed_form(FamilyParams const& p)
{
    p.validate();
    double const mu = p.mu;
    double const lam = p.lambda;
    double const m = mu - lam * lam;
    double const r = std::min(domain_radius(mu), domain_radius(m));
    return ScalarField::from(p.dim, [mu, lam, m, r]<class T>(std::span<T const> x, std::span<T const> y) {
        using std::pow;
        using std::sqrt;
        require_ball(x, r);
        T const xx = dot(x, x);
        T const yy = dot(y, y);
        T const xy = dot(x, y);
        T const q4 = pow(1.0 + mu * xx, 0.25);
        T const d = 1.0 + m * xx;
        return q4 * sqrt(d * yy - m * xy * xy) / d - lam * xy / (d * q4);
    });
}

MetricField csc_metric(int dim, double mu)
{
    check_dim(dim);
    double const r = domain_radius(mu);
    return MetricField::from(dim, [mu, r]<class T>(std::span<T const> x) {
        require_ball(x, r);
        T const d = 1.0 + mu * sq(x);
        return csc_shape(x, mu, T(1.0 / (d * d)));
    });
}

OneFormField cc_oneform(int dim, double lambda, double mu, std::vector<double> a)
{
    check_dim(dim);
    if (a.empty())
        a.assign(static_cast<std::size_t>(dim), 0.0);
    if (static_cast<int>(a.size()) != dim)
        throw ParameterError("constant vector has wrong dimension");
    bool const nonzero = std::any_of(a.begin(), a.end(), [](double v) { return v != 0.0; });
    if (nonzero && mu != 0.0)
        throw ParameterError("a nonzero constant vector is only admitted with mu = 0");
    double const r = domain_radius(mu);
    return OneFormField::from(dim, [lambda, mu, a, r]<class T>(std::span<T const> x) {
        using std::pow;
        require_ball(x, r);
        T const d = 1.0 + mu * sq(x);
        T ax(0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            ax += a[i] * x[i];
        T const denom = pow(d, 1.5);
        Vec<T> out;
        for (std::size_t i = 0; i < x.size(); ++i)
            out.push_back((lambda * x[i] + d * a[i] - mu * ax * x[i]) / denom);
        return out;
    });
}

double cc_conformal_factor(double lambda, double mu, std::vector<double> const& a, std::vector<double> const& x)
{
    double ax = 0.0;
    double xx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ax += (a.empty() ? 0.0 : a[i]) * x[i];
        xx += x[i] * x[i];
    }
    return (lambda - mu * ax) / std::sqrt(1.0 + mu * xx);
}

MetricField dfr_metric(int dim, double mu)
{
    check_dim(dim);
    double const r = domain_radius(mu);
    return MetricField::from(dim, [mu, r]<class T>(std::span<T const> x) {
        using std::pow;
        require_ball(x, r);
        T const d = 1.0 + mu * sq(x);
        return csc_shape(x, mu, T(1.0 / pow(d, 1.5)));
    });
}

OneFormField drb_oneform(int dim, double lambda, double mu)
{
    check_dim(dim);
    double const r = domain_radius(mu);
    return OneFormField::from(dim, [lambda, mu, r]<class T>(std::span<T const> x) {
        using std::pow;
        require_ball(x, r);
        T const scale = lambda / pow(1.0 + mu * sq(x), 1.25);
        Vec<T> out;
        for (auto const& v : x)
            out.push_back(scale * v);
        return out;
    });
}

std::vector<double> dfr_theta(double mu, std::vector<double> const& x)
{
    double xx = 0.0;
    for (double v : x)
        xx += v * v;
    std::vector<double> out;
    for (double v : x)
        out.push_back(-mu * v / (4.0 * (1.0 + mu * xx)));
    return out;
}

double drb_factor(double lambda, double mu, std::vector<double> const& x)
{
    double xx = 0.0;
    for (double v : x)
        xx += v * v;
    return 0.5 * lambda * (2.0 + mu * xx) / std::pow(1.0 + mu * xx, 0.75);
}

double drb_nontriviality(double lambda, double mu, std::vector<double> const& x)
{
    double xx = 0.0;
    for (double v : x)
        xx += v * v;
    return lambda / std::pow(1.0 + mu * xx, 0.75);
}

PotentialField quartic_potential(int dim)
{
    check_dim(dim);
    return PotentialField::from(dim, []<class T>(std::span<T const> x) {
        T const xx = dot(x, x);
        return 0.25 * xx * xx + 0.5 * xx;
    });
}

}  // namespace dflat::catalog
