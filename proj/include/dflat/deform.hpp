#pragma once

/**
    \file
    \brief beta-deformations of a Riemannian metric and a one-form

    Three stages driven by functions of t = b^2:

        stretch:    a~_ij = a_ij - kappa(t) b_i b_j,    b~ = b
        conformal:  a^_ij = e^{2 rho(t)} a~_ij,         b^ = b
        rescale:    a-_ij = a^_ij,                      b- = nu(t) b

    Stage outputs are materialized fields, so they can be fed straight back into the Riemannian routines. The closed
    forms predicting each stage's spray and covariant derivative from the input data are provided alongside, with a
    direct recomputation for comparison.
*/

#include <dflat/field.hpp>
#include <dflat/riemann.hpp>

#include <array>
#include <string>
#include <vector>

namespace dflat {

/// (kappa, rho, nu) with their exact t-derivatives.
struct DeformationProfile
{
    std::string name;
    UnaryFn kappa;
    UnaryFn dkappa;
    UnaryFn rho;
    UnaryFn drho;
    UnaryFn nu;
    UnaryFn dnu;

    /// kappa = 0, rho = 0, nu = 1.
    static DeformationProfile identity();
    /// kappa = 1, e^rho = sqrt(1 - t), nu = -(1 - t): the navigation transform.
    static DeformationProfile navigation();
    /// kappa = 0, e^rho = (1 - t)^{1/4}, nu = (1 - t)^{-1/4}.
    static DeformationProfile kappa_zero();
    /// Constant factors; they need not solve the factor equations.
    static DeformationProfile constant(double kappa, double rho = 0.0, double nu = 1.0);
    /**
        kappa = 0, rho = (ln lambda^2 - ln(lambda^2 - mu t)) / 4, nu = e^rho. Applied to (csc, cc) it yields the dually
        flat metric dfr and the dually related one-form drb. Requires lambda != 0.
    */
    static DeformationProfile csc_conformal(double mu, double lambda);
};

struct AlphaBeta
{
    MetricField alpha;
    OneFormField beta;
};

enum class Stage
{
    stretch = 1,
    conformal = 2,
    rescale = 3,
};

struct DeformedData
{
    AlphaBeta tilde;  ///< after the stretch
    AlphaBeta hat;    ///< after the conformal change
    AlphaBeta bar;    ///< after the one-form rescale

    AlphaBeta const& at(Stage s) const;
};

/// Evaluating any output where 1 - kappa b^2 <= 0 or nu = 0 throws PositivityError.
DeformedData deform(MetricField const& alpha, OneFormField const& beta, DeformationProfile const& profile);

/// Residuals of the three factor equations at t = b^2.
std::array<double, 3> profile_conditions(DeformationProfile const& profile, double t);

/// Spray and covariant derivative of one deformation stage at a probe.
struct StageQuantities
{
    std::vector<double> spray;
    Mat<double> bij;
};

/// Input data at (x, y) shared by the three stage predictions.
struct LemmaInputs
{
    CovariantDecomposition d;
    std::vector<double> spray;  ///< G^i of alpha
    std::vector<double> y;
    double kappa = 0.0;
    double dkappa = 0.0;
    double rho = 0.0;
    double drho = 0.0;
    double nu = 1.0;
    double dnu = 0.0;
};

LemmaInputs lemma_inputs(MetricField const& alpha, OneFormField const& beta, DeformationProfile const& profile,
                         ChartPoint const& x, TangentVector const& y);

/// Stretch stage predicted from the input data. Throws PositivityError when 1 - kappa b^2 <= 0.
StageQuantities lemma1_predicted(LemmaInputs const& in);
/// Conformal stage predicted from the stretch stage.
StageQuantities lemma2_predicted(LemmaInputs const& in, StageQuantities const& stretched);
/// Rescale stage predicted from the conformal stage.
StageQuantities lemma3_predicted(LemmaInputs const& in, StageQuantities const& conformal);

/// Direct recomputation: Christoffel symbols and covariant derivative on the materialized stage output.
StageQuantities direct_stage(DeformedData const& data, Stage stage, ChartPoint const& x, TangentVector const& y);

/// max(|dG| / (1 + |G|), |dB| / (1 + |B|)) between two stage evaluations.
double stage_mismatch(StageQuantities const& a, StageQuantities const& b);

/// Inverse of the kappa = 0 deformation: alpha = (1 + b-^2)^{1/4} a-, beta = (1 + b-^2)^{-1/4} b-.
AlphaBeta reverse_kappa0(MetricField const& alpha_bar, OneFormField const& beta_bar);

}  // namespace dflat
