#include <dflat/deform.hpp>
#include <dflat/flatness.hpp>
#include <dflat/riemann.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace dflat {

namespace {

struct LeastSquares
{
    Eigen::VectorXd solution;
    double residual = 0.0;
};

LeastSquares solve_least_squares(Eigen::MatrixXd const& A, Eigen::VectorXd const& rhs, char const* what)
{
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-12);
    if (qr.rank() < A.cols())
        throw RankError(std::string(what) + ": singular normal equations (rank " + std::to_string(qr.rank()) + " of " +
                        std::to_string(A.cols()) + ")");
    LeastSquares out;
    out.solution = qr.solve(rhs);
    out.residual = (A * out.solution - rhs).norm() / (1.0 + rhs.norm());
    return out;
}

double relative(double diff2, double lhs2)
{
    return std::sqrt(diff2) / (1.0 + std::sqrt(lhs2));
}

double contract(Mat<double> const& m, std::vector<double> const& v, int i)
{
    double s = 0.0;
    for (int k = 0; k < m.size(); ++k)
        s += m(i, k) * v[k];
    return s;
}

std::vector<double> to_vector(Eigen::VectorXd const& v, int n)
{
    return std::vector<double>(v.data(), v.data() + n);
}

}  // namespace

ThetaFit extract_riemann_theta(MetricField const& metric, ChartPoint const& x)
{
    int const n = x.dim();
    Mat<double> const a = metric(x.coords());
    Mat<double> const ai = inverse(a);
    auto const gamma = christoffel(metric, x);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n * n * n, n);
    Eigen::VectorXd rhs(n * n * n);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++row) {
                rhs(row) = gamma(i, j, k);
                for (int l = 0; l < n; ++l)
                    A(row, l) = 2.0 * ((j == l && i == k) + (k == l && i == j)) + 2.0 * a(j, k) * ai(i, l);
            }
    auto const ls = solve_least_squares(A, rhs, "extract_riemann_theta");
    return {to_vector(ls.solution, n), ls.residual};
}

ThetaTau extract_theta_tau(MetricField const& alpha, OneFormField const& beta, ChartPoint const& x)
{
    int const n = x.dim();
    Vec<double> y0(static_cast<std::size_t>(n), 0.0);
    y0[0] = 1.0;
    auto const d = covariant_decomposition(alpha, beta, x, TangentVector(y0));
    if (!(std::sqrt(d.b2) > 1e-12))
        throw UnderdeterminedError("theta/tau extraction needs a nonvanishing one-form; use the Riemannian test");
    auto const gamma = christoffel(alpha, x);
    auto const& a = d.a;
    auto const& ai = d.a_inv;
    auto const& b = d.b;
    auto const& bu = d.b_up;

    int const rows = n * n * n + 2 * n * n;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, n + 1);
    Eigen::VectorXd rhs(rows);
    int row = 0;
    // Gamma^i_jk = (2 theta_j + tau b_j) delta^i_k + (2 theta_k + tau b_k) delta^i_j - 2 a_jk (tau b^i - theta^i)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++row) {
                rhs(row) = gamma(i, j, k);
                for (int l = 0; l < n; ++l)
                    A(row, l) = 2.0 * ((j == l && i == k) + (k == l && i == j)) + 2.0 * a(j, k) * ai(i, l);
                A(row, n) = b[j] * (i == k) + b[k] * (i == j) - 2.0 * a(j, k) * bu[i];
            }
    // r_ij = theta_i b_j + theta_j b_i - 5 tau b_i b_j + (3 tau + 2 tau b^2 - 2 b^l theta_l) a_ij
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j, ++row) {
            rhs(row) = d.rij(i, j);
            for (int l = 0; l < n; ++l)
                A(row, l) = (i == l) * b[j] + (j == l) * b[i] - 2.0 * bu[l] * a(i, j);
            A(row, n) = -5.0 * b[i] * b[j] + (3.0 + 2.0 * d.b2) * a(i, j);
        }
    // s_ij = theta_i b_j - theta_j b_i
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j, ++row) {
            rhs(row) = d.sij(i, j);
            for (int l = 0; l < n; ++l)
                A(row, l) = (i == l) * b[j] - (j == l) * b[i];
        }
    auto const ls = solve_least_squares(A, rhs, "extract_theta_tau");

    ThetaTau out;
    out.theta = to_vector(ls.solution, n);
    out.tau = ls.solution(n);
    out.residual = ls.residual;

    auto const& th = out.theta;
    double const tau = out.tau;
    double bt = 0.0;
    for (int k = 0; k < n; ++k)
        bt += bu[k] * th[k];
    std::vector<double> th_up(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        th_up[i] = contract(ai, th, i);

    std::array<double, 6> diff{};
    std::array<double, 6> lhs{};
    auto add = [&](int e, double l, double r) {
        diff[e] += (l - r) * (l - r);
        lhs[e] += l * l;
    };
    double const q = 3.0 * tau * (1.0 - d.b2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            add(0, d.rij(i, j),
                th[i] * b[j] + th[j] * b[i] - 5.0 * tau * b[i] * b[j] + (3.0 * tau + 2.0 * tau * d.b2 - 2.0 * bt) * a(i, j));
            double s_up = 0.0;
            for (int k = 0; k < n; ++k)
                s_up += ai(i, k) * d.sij(k, j);
            add(1, s_up, th_up[i] * b[j] - th[j] * bu[i]);
            add(4, b[i] * d.s_i[j] + b[j] * d.s_i[i], 2.0 * bt * b[i] * b[j] - d.b2 * (th[i] * b[j] + th[j] * b[i]));
        }
        add(2, d.s_i[i], bt * b[i] - d.b2 * th[i]);
        add(3, d.r_i[i] + d.s_i[i], q * b[i]);
    }
    add(5, d.r, q * d.b2);
    for (int e = 0; e < 6; ++e)
        out.consequences[e] = relative(diff[e], lhs[e]);
    return out;
}

std::array<double, 3> maincf_residuals(MetricField const& alpha, OneFormField const& beta,
                                       std::vector<double> const& theta, double tau, ChartPoint const& x,
                                       TangentVector const& y)
{
    require_slit(y);
    int const n = x.dim();
    if (static_cast<int>(theta.size()) != n)
        throw ParameterError("theta has wrong dimension");
    auto const d = covariant_decomposition(alpha, beta, x, y);
    auto const G = riemann_spray(alpha, x, y);
    auto const yv = y.vec();
    double th0 = 0.0;
    double bt = 0.0;
    for (int k = 0; k < n; ++k) {
        th0 += theta[k] * yv[k];
        bt += d.b_up[k] * theta[k];
    }
    double dg = 0.0;
    double lg = 0.0;
    double ds = 0.0;
    double ls = 0.0;
    for (int i = 0; i < n; ++i) {
        double const rhs = (2.0 * th0 + tau * d.beta) * yv[i] - d.alpha2 * (tau * d.b_up[i] - contract(d.a_inv, theta, i));
        dg += (G[i] - rhs) * (G[i] - rhs);
        lg += G[i] * G[i];
        double const srhs = d.beta * theta[i] - th0 * d.b[i];
        ds += (d.s_i0[i] - srhs) * (d.s_i0[i] - srhs);
        ls += d.s_i0[i] * d.s_i0[i];
    }
    double const rrhs = 2.0 * th0 * d.beta - 5.0 * tau * d.beta * d.beta +
                        (3.0 * tau + 2.0 * tau * d.b2 - 2.0 * bt) * d.alpha2;
    double const dr = d.r00 - rrhs;
    return {relative(dg, lg), relative(dr * dr, d.r00 * d.r00), relative(ds, ls)};
}

DuallyRelatedCertificate dually_related_check(MetricField const& metric, OneFormField const& oneform,
                                              std::vector<double> const& theta, ChartPoint const& x)
{
    int const n = x.dim();
    if (static_cast<int>(theta.size()) != n)
        throw ParameterError("theta has wrong dimension");
    Mat<double> const a = metric(x.coords());
    Mat<double> const ai = inverse(a);
    Vec<double> const b = oneform(x.coords());
    Mat<double> const bij = covariant_derivative(metric, oneform, x.coords());

    DuallyRelatedCertificate out;
    out.theta = theta;
    double tr = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            tr += ai(i, j) * (bij(i, j) - 2.0 * theta[i] * b[j]);
    out.c = tr / n;
    double diff = 0.0;
    double lhs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double const e = bij(i, j) - 2.0 * theta[i] * b[j] - out.c * a(i, j);
            diff += e * e;
            lhs += bij(i, j) * bij(i, j);
        }
    out.residual = relative(diff, lhs);
    double bt = 0.0;
    for (int k = 0; k < n; ++k)
        bt += b[k] * contract(ai, theta, k);
    out.nontriviality = out.c + 2.0 * bt;
    return out;
}

double triviality_residual(MetricField const& metric, OneFormField const& oneform, ChartPoint const& x)
{
    int const n = x.dim();
    auto const fit = extract_riemann_theta(metric, x);
    Mat<double> const a = metric(x.coords());
    Mat<double> const ai = inverse(a);
    Vec<double> const b = oneform(x.coords());
    Mat<double> const bij = covariant_derivative(metric, oneform, x.coords());
    double bt = 0.0;
    for (int k = 0; k < n; ++k)
        bt += b[k] * contract(ai, fit.theta, k);
    double diff = 0.0;
    double lhs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double const e = bij(i, j) - 2.0 * fit.theta[i] * b[j] + 2.0 * bt * a(i, j);
            diff += e * e;
            lhs += bij(i, j) * bij(i, j);
        }
    return std::max(fit.residual, relative(diff, lhs));
}

MetricField hessian_metric(PotentialField const& psi, std::vector<ChartPoint> const& validate_at)
{
    int const n = psi.dim();
    auto metric = MetricField::from(n, [psi, n]<class T>(std::span<T const> x) {
        if constexpr (jet_depth_v<T> > max_jet_depth - 2) {
            throw_depth_exceeded("hessian_metric");
            return Mat<T>(n);
        }
        else {
            using JJ = Jet<Jet<T>>;
            Mat<T> out(n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Vec<JJ> xs;
                    for (int m = 0; m < n; ++m)
                        xs.push_back(JJ(Jet<T>(x[m], T(m == j ? 1.0 : 0.0)), Jet<T>(T(m == i ? 1.0 : 0.0), T(0.0))));
                    T const v = psi(std::span<JJ const>(xs)).df.df;
                    out(i, j) = v;
                    out(j, i) = v;
                }
            return out;
        }
    });
    std::vector<ChartPoint> points = validate_at;
    if (points.empty())
        points.emplace_back(std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (auto const& p : points)
        if (!is_positive_definite(metric(p.coords())))
            throw ConvexityError("Hessian is not positive definite at " + format_point(p.vec()));
    return metric;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "indeterminate";
    }
}

std::array<double, 3> main1_item_residuals(RandersMetric const& F, Probe const& probe)
{
    auto const& [x, y] = probe;
    auto shape = [&x](MetricField const& m, OneFormField const& b) {
        auto const fit = extract_riemann_theta(m, x);
        auto const cert = dually_related_check(m, b, fit.theta, x);
        return std::max(fit.residual, cert.residual);
    };
    double const first = dual_flatness_residual(F.finsler(), x, y).normalized;
    auto const nav = to_navigation(F);
    double const second = shape(nav.h(), nav.wind_flat());
    auto const deformed = deform(F.alpha(), F.beta(), DeformationProfile::kappa_zero());
    double const third = shape(deformed.bar.alpha, deformed.bar.beta);
    return {first, second, third};
}

EquivalenceReport main1_equivalence(RandersMetric const& F, std::vector<Probe> const& probes,
                                    VerdictBands const& bands)
{
    EquivalenceReport out;
    out.probes = static_cast<int>(probes.size());
    std::array<double, 3> sum{};
    std::array<double, 3> decided_max{};
    int decided = 0;
    for (auto const& p : probes) {
        auto const r = main1_item_residuals(F, p);
        bool const in_band =
            std::any_of(r.begin(), r.end(), [&](double v) { return v >= bands.band_low && v <= bands.band_high; });
        for (int k = 0; k < 3; ++k) {
            out.items[k].max_residual = std::max(out.items[k].max_residual, r[k]);
            sum[k] += r[k];
        }
        if (in_band) {
            ++out.indeterminate_probes;
            continue;
        }
        ++decided;
        for (int k = 0; k < 3; ++k)
            decided_max[k] = std::max(decided_max[k], r[k]);
    }
    for (int k = 0; k < 3; ++k) {
        auto& item = out.items[k];
        item.mean_residual = probes.empty() ? 0.0 : sum[k] / static_cast<double>(probes.size());
        if (decided == 0)
            item.verdict = Verdict::indeterminate;
        else
            item.verdict = decided_max[k] < bands.pass_tol ? Verdict::pass : Verdict::fail;
    }
    out.coherent = out.items[0].verdict == out.items[1].verdict && out.items[1].verdict == out.items[2].verdict;
    return out;
}

}  // namespace dflat
