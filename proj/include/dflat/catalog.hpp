#pragma once

/**
    \file
    \brief closed-form metrics and one-forms: Funk, the (mu, lambda) dually flat family, constant-curvature metrics
*/

#include <dflat/field.hpp>
#include <dflat/randers.hpp>

#include <limits>
#include <vector>

namespace dflat::catalog {

/// Radius of B^n(r_mu): 1/sqrt(-mu) for mu < 0, infinite otherwise.
double domain_radius(double mu);

/// Uniform shrink applied to every catalog domain when sampling.
inline constexpr double shrink_factor = 0.9;

struct FamilyParams
{
    double mu = 0.0;
    double lambda = 0.0;
    int dim = 2;

    double radius() const { return domain_radius(mu); }
    /// Throws ParameterError for dim < 2 or non-finite parameters.
    void validate() const;
};

/// Euclidean alpha with beta = 0.
RandersMetric euclidean(int dim);

/// Funk metric on the unit ball; sign selects the +/- branch of beta.
RandersMetric funk(int dim, int sign = +1);

/// The displayed Funk function, evaluated directly (not as alpha + beta).
ScalarField funk_closed_form(int dim, int sign = +1);

/// Dually flat Randers family on B^n(r_mu).
RandersMetric example_family(FamilyParams const& p);

/// The family written as one expression.
ScalarField family_closed_form(FamilyParams const& p);

/// Alternative family obtained through the kappa = 0 route (equal to the family at (mu - lambda^2, -lambda)).
ScalarField alternative_family_closed_form(FamilyParams const& p);

/// Constant sectional curvature mu metric.
MetricField csc_metric(int dim, double mu);

/**
    Closed conformal one-form with respect to csc_metric(mu). A nonzero constant vector a is only admitted when
    mu = 0 (ParameterError otherwise).
*/
OneFormField cc_oneform(int dim, double lambda, double mu, std::vector<double> a = {});

/// Conformal factor sigma(x) = (lambda - mu <a,x>) / sqrt(1 + mu |x|^2) of cc_oneform.
double cc_conformal_factor(double lambda, double mu, std::vector<double> const& a, std::vector<double> const& x);

/// Dually flat Riemannian metric (1 + mu|x|^2)^{1/4} times csc_metric(mu).
MetricField dfr_metric(int dim, double mu);

/// One-form dually related to dfr_metric(mu).
OneFormField drb_oneform(int dim, double lambda, double mu);

/// Expected dual-flatness one-form of dfr_metric: theta_i = -mu x_i / (4 (1 + mu|x|^2)).
std::vector<double> dfr_theta(double mu, std::vector<double> const& x);

/// Expected c(x) of drb with respect to dfr: (lambda/2)(2 + mu|x|^2)/(1 + mu|x|^2)^{3/4}.
double drb_factor(double lambda, double mu, std::vector<double> const& x);

/// Expected c + 2 b_k theta^k of drb: lambda / (1 + mu|x|^2)^{3/4}.
double drb_nontriviality(double lambda, double mu, std::vector<double> const& x);

/// Hessian-type potential |x|^4 / 4 + |x|^2 / 2.
PotentialField quartic_potential(int dim);

}  // namespace dflat::catalog
