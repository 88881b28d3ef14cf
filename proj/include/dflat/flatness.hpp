#pragma once

/**
    \file
    \brief pointwise characterization checks for dual flatness

    Riemannian test: Gamma^i_jk = 2 theta_j delta^i_k + 2 theta_k delta^i_j + 2 a_jk theta^i for some one-form theta,
    i.e. G^i = 2 theta y^i + alpha^2 theta^i.

    Randers test: there are theta and tau with

        G^i  = (2 theta + tau beta) y^i - alpha^2 (tau b^i - theta^i)
        r_ij = theta_i b_j + theta_j b_i - 5 tau b_i b_j + (3 tau + 2 tau b^2 - 2 b.theta) a_ij
        s_ij = theta_i b_j - theta_j b_i

    A one-form is dually related to a metric of the Riemannian shape when b_{i|j} = 2 theta_i b_j + c(x) a_ij.

    All residuals are normalized as |lhs - rhs| / (1 + |lhs|) in the Frobenius sense.
*/

#include <dflat/engine.hpp>
#include <dflat/field.hpp>
#include <dflat/randers.hpp>

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace dflat {

struct ThetaFit
{
    std::vector<double> theta;  ///< theta_i (lower index)
    double residual = 0.0;
};

/// Least-squares fit of the Riemannian shape at x. Throws RankError on singular normal equations.
ThetaFit extract_riemann_theta(MetricField const& metric, ChartPoint const& x);

struct ThetaTau
{
    std::vector<double> theta;
    double tau = 0.0;
    /// Joint misfit of the spray, r_ij and s_ij identities.
    double residual = 0.0;
    /// Misfits of the six derived identities (r_ij, s^i_j, s_j, r_i + s_i, b_i s_j + b_j s_i, r).
    std::array<double, 6> consequences{};
};

/// Joint least-squares fit of (theta, tau) at x. Throws UnderdeterminedError when beta vanishes at x.
ThetaTau extract_theta_tau(MetricField const& alpha, OneFormField const& beta, ChartPoint const& x);
inline ThetaTau extract_theta_tau(RandersMetric const& F, ChartPoint const& x)
{
    return extract_theta_tau(F.alpha(), F.beta(), x);
}

/// Misfits of the spray, r_00 and s_i0 identities along y for given (theta, tau).
std::array<double, 3> maincf_residuals(MetricField const& alpha, OneFormField const& beta,
                                       std::vector<double> const& theta, double tau, ChartPoint const& x,
                                       TangentVector const& y);

struct DuallyRelatedCertificate
{
    std::vector<double> theta;
    double c = 0.0;
    double residual = 0.0;
    double nontriviality = 0.0;  ///< c + 2 b_k theta^k
};

DuallyRelatedCertificate dually_related_check(MetricField const& metric, OneFormField const& oneform,
                                              std::vector<double> const& theta, ChartPoint const& x);

/// Distance of (alpha, beta) from b_{i|j} = 2 theta_i b_j - 2 (b.theta) a_ij with the Riemannian shape on alpha.
double triviality_residual(MetricField const& metric, OneFormField const& oneform, ChartPoint const& x);

/**
    a_ij = d_i d_j psi. Positive definiteness is checked at every point of validate_at (ConvexityError otherwise).
    Curvature of the result is out of reach: evaluation nests four jet levels below the metric.
*/
MetricField hessian_metric(PotentialField const& psi, std::vector<ChartPoint> const& validate_at = {});

enum class Verdict
{
    pass,
    fail,
    indeterminate,
};

std::string to_string(Verdict v);

/// Bands shared by the equivalence harness: below pass_tol passes, inside [band_low, band_high] is indeterminate.
struct VerdictBands
{
    double pass_tol = 1e-6;
    double band_low = 1e-8;
    double band_high = 1e-4;
};

struct ItemSummary
{
    double max_residual = 0.0;
    double mean_residual = 0.0;
    Verdict verdict = Verdict::pass;
};

struct EquivalenceReport
{
    /// Dual flatness of F, shape of the navigation data, shape of the kappa = 0 deformation.
    std::array<ItemSummary, 3> items;
    int probes = 0;
    int indeterminate_probes = 0;
    bool coherent = true;
};

using Probe = std::pair<ChartPoint, TangentVector>;

/// Per-probe item residuals: dual-flatness residual, navigation shape residual, deformed shape residual.
std::array<double, 3> main1_item_residuals(RandersMetric const& F, Probe const& probe);

/**
    Runs the three items over every probe. A probe touching the indeterminate band is counted and left out of the
    verdicts; the remaining probes decide each item, and coherent is true when all three verdicts agree.
*/
EquivalenceReport main1_equivalence(RandersMetric const& F, std::vector<Probe> const& probes,
                                    VerdictBands const& bands = {});

}  // namespace dflat
