#include "support.hpp"

#include <dflat/deform.hpp>
#include <dflat/flatness.hpp>
#include <dflat/riemann.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace dflat;
namespace t = dflat::testing;

namespace {

double vdot(std::vector<double> const& a, std::vector<double> const& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

std::vector<double> neg(std::vector<double> v)
{
    for (auto& e : v)
        e = -e;
    return v;
}

/// Splits a closed-form Randers function into alpha(y) = (F(y) + F(-y)) / 2 and beta(y) = (F(y) - F(-y)) / 2 and
/// compares with the component fields.
void expect_components(RandersMetric const& F, ScalarField const& closed, ChartPoint const& x, TangentVector const& y,
                       double tol)
{
    double const fp = closed(x.coords(), y.coords());
    auto const ym = neg(y.vec());
    double const fm = closed(x.coords(), std::span<double const>(ym));
    Mat<double> const a = F.alpha()(x.coords());
    auto const b = F.beta()(x.coords());
    EXPECT_NEAR(0.5 * (fp + fm), std::sqrt(quadratic(a, y.vec())), tol);
    EXPECT_NEAR(0.5 * (fp - fm), vdot(b, y.vec()), tol);
}

}  // namespace

TEST(Funk, OriginGivesEuclideanNorm)
{
    for (int sign : {+1, -1}) {
        auto const F = catalog::funk(3, sign).finsler();
        auto const G = catalog::funk_closed_form(3, sign);
        std::vector<double> const x{0.0, 0.0, 0.0};
        std::vector<double> const y{0.3, -1.2, 0.4};
        double const norm = std::sqrt(vdot(y, y));
        EXPECT_NEAR(F(x, y), norm, 1e-15);
        EXPECT_NEAR(G(x, y), norm, 1e-15);
    }
}

TEST(Funk, ComponentsMatchClosedForm)
{
    for (int sign : {+1, -1}) {
        auto const F = catalog::funk(3, sign);
        auto const closed = catalog::funk_closed_form(3, sign);
        for (auto const& p : t::probes(3, 3, 100, t::sample_radius(1.0))) {
            EXPECT_LT(t::rel(F.finsler()(p.x.coords(), p.y.coords()), closed(p.x.coords(), p.y.coords())), 1e-12);
            expect_components(F, closed, p.x, p.y, 1e-12);
        }
    }
}

TEST(Funk, OneFormNormIsRadius)
{
    auto const F = catalog::funk(3);
    for (auto const& p : t::probes(5, 3, 100, t::sample_radius(1.0))) {
        double const r = std::sqrt(vdot(p.x.vec(), p.x.vec()));
        EXPECT_NEAR(F.b_norm(p.x), r, 1e-12);
        EXPECT_LT(F.b_norm(p.x), 1.0);
    }
}

TEST(Funk, OutsideUnitBallIsRejected)
{
    auto const F = catalog::funk(2);
    EXPECT_THROW(F.check_admitted(ChartPoint({1.0, 0.0})), DomainError);
    EXPECT_THROW(F.check_admitted(ChartPoint({0.8, 0.8})), DomainError);
    EXPECT_THROW(F.finsler()(std::vector<double>{1.2, 0.0}, std::vector<double>{1.0, 0.0}), DomainError);
}

TEST(Funk, IsNavigationOfRadialWind)
{
    auto const W = VectorField::from(3, []<class T>(std::span<T const> x) { return Vec<T>{-x[0], -x[1], -x[2]}; });
    auto const G = from_navigation(NavigationData(MetricField::euclidean(3), W, 1.0));
    auto const F = catalog::funk(3);
    for (auto const& p : t::probes(7, 3, 100, t::sample_radius(1.0)))
        EXPECT_LT(std::abs(G.finsler()(p.x.coords(), p.y.coords()) - F.finsler()(p.x.coords(), p.y.coords())), 1e-10);
}

TEST(Family, ComponentsMatchClosedForm)
{
    for (int n : {2, 3})
        for (auto [mu, lambda] : t::family_params()) {
            catalog::FamilyParams const prm{mu, lambda, n};
            auto const F = catalog::example_family(prm);
            auto const closed = catalog::family_closed_form(prm);
            for (auto const& p : t::admitted_probes(F, 11, 50)) {
                EXPECT_LT(t::rel(F.finsler()(p.x.coords(), p.y.coords()), closed(p.x.coords(), p.y.coords())), 1e-12);
                expect_components(F, closed, p.x, p.y, 1e-12);
            }
        }
}

TEST(Family, SimplestMember)
{
    auto const F = catalog::example_family({0.0, 1.0, 2}).finsler();
    for (auto const& p : t::probes(13, 2, 50, 1.8)) {
        double const q = 1.0 + vdot(p.x.vec(), p.x.vec());
        double const expect = std::pow(q, 0.25) * std::sqrt(vdot(p.y.vec(), p.y.vec())) +
                              std::pow(q, -0.25) * vdot(p.x.vec(), p.y.vec());
        EXPECT_NEAR(F(p.x.coords(), p.y.coords()), expect, 1e-13);
    }
}

TEST(Family, ZeroLambdaIsRiemannian)
{
    for (double mu : {-1.0, 0.0, 1.0}) {
        auto const F = catalog::example_family({mu, 0.0, 3});
        auto const m = catalog::dfr_metric(3, mu);
        for (auto const& p : t::probes(17, 3, 30, t::sample_radius(catalog::domain_radius(mu)))) {
            EXPECT_LT(frobenius_distance(F.alpha()(p.x.coords()), m(p.x.coords())), 1e-14);
            EXPECT_EQ(norm2(F.beta()(p.x.coords())), 0.0);
        }
    }
}

TEST(Family, AlternativeDisplayIsReparametrized)
{
    for (auto [mu, lambda] : t::family_params()) {
        auto const alt = catalog::alternative_family_closed_form({mu, lambda, 3});
        catalog::FamilyParams const q{mu - lambda * lambda, -lambda, 3};
        auto const F = catalog::example_family(q).finsler();
        double const r = t::sample_radius(std::min(catalog::domain_radius(mu), catalog::domain_radius(q.mu)));
        for (auto const& p : t::probes(19, 3, 100, r))
            EXPECT_LT(t::rel(alt(p.x.coords(), p.y.coords()), F(p.x.coords(), p.y.coords())), 1e-12) << mu << ' ' << lambda;
    }
}

TEST(Family, PassesEquivalence)
{
    for (int n : {2, 3})
        for (auto [mu, lambda] : t::family_params()) {
            auto const F = catalog::example_family({mu, lambda, n});
            std::vector<Probe> probes;
            for (auto const& p : t::admitted_probes(F, 23, 30))
                probes.emplace_back(p.x, p.y);
            auto const r = main1_equivalence(F, probes);
            for (auto const& item : r.items)
                EXPECT_EQ(item.verdict, Verdict::pass) << mu << ' ' << lambda;
        }
}

TEST(Family, InvalidParametersAreRejected)
{
    EXPECT_THROW(catalog::example_family({0.0, 1.0, 1}), ParameterError);
    EXPECT_THROW(catalog::example_family({std::numeric_limits<double>::quiet_NaN(), 1.0, 2}), ParameterError);
    EXPECT_THROW(catalog::example_family({0.0, std::numeric_limits<double>::infinity(), 2}), ParameterError);
}

TEST(Family, DomainRadius)
{
    EXPECT_DOUBLE_EQ(catalog::domain_radius(-1.0), 1.0);
    EXPECT_DOUBLE_EQ(catalog::domain_radius(-0.25), 2.0);
    EXPECT_TRUE(std::isinf(catalog::domain_radius(0.0)));
    EXPECT_TRUE(std::isinf(catalog::domain_radius(1.0)));
}

TEST(Catalog, RandersBoundHoldsWithMargin)
{
    for (int n : {2, 3})
        for (auto const& [name, F] : t::catalog_randers(n))
            for (auto const& p : t::probes(29, n, 200, t::sample_radius(F.radius())))
                EXPECT_LT(F.b_norm(p.x), 1.0 - 1e-6) << name;
}

TEST(ClosedConformal, FlatCaseIsLinear)
{
    auto const a = catalog::csc_metric(3, 0.0);
    auto const b = catalog::cc_oneform(3, 0.7, 0.0);
    for (auto const& p : t::probes(31, 3, 20, 1.5)) {
        EXPECT_EQ(frobenius_distance(a(p.x.coords()), Mat<double>::identity(3)), 0.0);
        auto const v = b(p.x.coords());
        for (int i = 0; i < 3; ++i)
            EXPECT_NEAR(v[i], 0.7 * p.x[i], 1e-15);
    }
}

TEST(ClosedConformal, ConformalFactorFromTrace)
{
    for (double mu : {-1.0, 0.0, 1.0})
        for (auto const& a : {std::vector<double>{}, std::vector<double>{0.2, -0.4}}) {
            if (mu != 0.0 && !a.empty())
                continue;
            auto const b = catalog::cc_oneform(2, 0.6, mu, a);
            for (auto const& p : t::probes(37, 2, 20, t::sample_radius(catalog::domain_radius(mu)))) {
                auto const d = covariant_decomposition(catalog::csc_metric(2, mu), b, p.x, p.y);
                double trace = 0.0;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        trace += d.a_inv(i, j) * d.bij(i, j);
                double const ax = a.empty() ? 0.0 : vdot(a, p.x.vec());
                double const sigma = (0.6 - mu * ax) / std::sqrt(1.0 + mu * vdot(p.x.vec(), p.x.vec()));
                EXPECT_NEAR(trace / 2.0, sigma, 1e-12);
                EXPECT_NEAR(catalog::cc_conformal_factor(0.6, mu, a, p.x.vec()), sigma, 1e-15);
            }
        }
}

TEST(ClosedConformal, ConstantVectorNeedsFlatMetric)
{
    EXPECT_THROW(catalog::cc_oneform(2, 1.0, 1.0, {0.1, 0.0}), ParameterError);
    EXPECT_NO_THROW(catalog::cc_oneform(2, 1.0, 0.0, {0.1, 0.0}));
    EXPECT_NO_THROW(catalog::cc_oneform(2, 1.0, 1.0, {0.0, 0.0}));
}

TEST(ClosedConformal, SectionalCurvatureIsMu)
{
    for (double mu : {-1.0, 0.5, 1.0}) {
        auto const m = catalog::csc_metric(3, mu);
        for (auto const& p : t::probes(41, 3, 20, t::sample_radius(catalog::domain_radius(mu))))
            EXPECT_NEAR(sectional_curvature(m, p.x, p.y, p.u), mu, 1e-8);
    }
}

TEST(DuallyFlatRiemannian, FlatCaseIsEuclidean)
{
    auto const m = catalog::dfr_metric(3, 0.0);
    for (auto const& p : t::probes(43, 3, 10, 1.5))
        EXPECT_EQ(frobenius_distance(m(p.x.coords()), Mat<double>::identity(3)), 0.0);
}

TEST(DuallyFlatRiemannian, PassesShapeTest)
{
    for (double mu : {-1.0, 1.0})
        for (auto const& p : t::probes(47, 3, 20, t::sample_radius(catalog::domain_radius(mu))))
            EXPECT_LT(extract_riemann_theta(catalog::dfr_metric(3, mu), p.x).residual, 1e-9);
}

TEST(DuallyFlatRiemannian, OneFormNorm)
{
    for (double mu : {-1.0, 0.5, 1.0})
        for (double lambda : {0.5, 1.0, 2.0}) {
            RandersMetric const F(catalog::dfr_metric(2, mu), catalog::drb_oneform(2, lambda, mu));
            for (auto const& p : t::probes(53, 2, 20, t::sample_radius(catalog::domain_radius(mu)))) {
                double const x2 = vdot(p.x.vec(), p.x.vec());
                double const b2 = std::pow(F.b_norm(p.x), 2);
                EXPECT_NEAR(b2, lambda * lambda * x2 / (1.0 + mu * x2), 1e-12);
                EXPECT_NEAR((lambda * lambda - mu * b2) * (1.0 + mu * x2), lambda * lambda, 1e-12);
            }
        }
}

TEST(DuallyFlatRiemannian, DuallyRelatedOneForm)
{
    for (double mu : {-1.0, 1.0}) {
        auto const m = catalog::dfr_metric(2, mu);
        for (auto const& p : t::probes(59, 2, 20, t::sample_radius(catalog::domain_radius(mu)))) {
            auto const cert = dually_related_check(m, catalog::drb_oneform(2, 1.5, mu), catalog::dfr_theta(mu, p.x.vec()), p.x);
            EXPECT_LT(cert.residual, 1e-9);
            EXPECT_NEAR(cert.c, catalog::drb_factor(1.5, mu, p.x.vec()), 1e-9);
        }
    }
}

TEST(DuallyFlatRiemannian, IsConformalDeformationOfConstantCurvature)
{
    for (double mu : {-1.0, 0.5, 1.0}) {
        auto const out = deform(catalog::csc_metric(3, mu), catalog::cc_oneform(3, 1.0, mu),
                                DeformationProfile::csc_conformal(mu, 1.0));
        auto const m = catalog::dfr_metric(3, mu);
        for (auto const& p : t::probes(61, 3, 30, t::sample_radius(catalog::domain_radius(mu)))) {
            Mat<double> const hat = out.hat.alpha(p.x.coords());
            Mat<double> const ref = m(p.x.coords());
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    EXPECT_NEAR(hat(i, j), ref(i, j), 1e-10);
        }
    }
}
