#include "support.hpp"

#include <dflat/engine.hpp>
#include <dflat/jet.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace dflat;
using dflat::testing::rel;

namespace {

ScalarField square_norm_y(int n)
{
    return ScalarField::from(n, []<class T>(std::span<T const>, std::span<T const> y) { return dot(y, y); });
}

ScalarField pairing(int n)
{
    return ScalarField::from(n, []<class T>(std::span<T const> x, std::span<T const> y) { return dot(x, y); });
}

ScalarField pairing_squared(int n)
{
    return ScalarField::from(n, []<class T>(std::span<T const> x, std::span<T const> y) {
        T const s = dot(x, y);
        return s * s;
    });
}

}  // namespace

TEST(Jet, LeibnizRuleHoldsForProducts)
{
    J1 const a(1.7, 0.3);
    J1 const b(-0.4, 2.5);
    J1 const p = a * b;
    EXPECT_NEAR(p.df, a.f * b.df + b.f * a.df, 1e-14 * std::abs(p.df));
    J1 const q = sin(a) * exp(b);
    double const expect = std::cos(a.f) * a.df * std::exp(b.f) + std::sin(a.f) * std::exp(b.f) * b.df;
    EXPECT_NEAR(q.df, expect, 1e-14 * std::abs(expect));
}

TEST(Jet, NestedLevelsGiveMixedPartials)
{
    // f(s, t) = s^2 t^3 at (2, 3): d2f/ds dt = 6 s t^2 = 108
    J2 const s(J1(2.0, 1.0), J1(0.0, 0.0));
    J2 const t(J1(3.0, 0.0), J1(1.0, 0.0));
    J2 const f = s * s * t * t * t;
    EXPECT_DOUBLE_EQ(f.df.df, 108.0);
}

TEST(JetDerivative, SecondYDerivativeOfSquaredNorm)
{
    auto const f = square_norm_y(2);
    EXPECT_DOUBLE_EQ(jet_derivative(f, ChartPoint({0.4, -1.0}), TangentVector({0.3, 2.0}), {}, {0, 0}), 2.0);
}

TEST(JetDerivative, MixedPartialOfSquaredPairing)
{
    auto const f = pairing_squared(2);
    EXPECT_DOUBLE_EQ(jet_derivative(f, ChartPoint({1.0, 0.0}), TangentVector({0.0, 1.0}), {1}, {0}), 2.0);
}

TEST(JetDerivative, FourthOrderPolynomial)
{
    auto const f = ScalarField::from(2, []<class T>(std::span<T const> x, std::span<T const> y) {
        return x[0] * x[0] * y[0] * y[0];
    });
    // d4/dx0 dx0 dy0 dy0 = 4
    EXPECT_DOUBLE_EQ(jet_derivative(f, ChartPoint({0.7, 0.2}), TangentVector({1.3, -0.5}), {0, 0}, {0, 0}), 4.0);
}

TEST(JetDerivative, FunkMixedPartialMatchesFiniteDifferences)
{
    auto const f = catalog::funk(2).finsler().squared();
    ChartPoint const x({0.3, 0.1});
    TangentVector const y({0.5, -0.2});
    double const ad = jet_derivative(f, x, y, {0}, {1});
    double const fd = fd_derivative(f, x, y, {0}, {1});
    EXPECT_LT(rel(fd, ad), 1e-6);
}

TEST(JetDerivative, RejectsOrderAboveFour)
{
    auto const f = square_norm_y(2);
    EXPECT_THROW(jet_derivative(f, ChartPoint({0.1, 0.1}), TangentVector({1.0, 0.0}), {0, 1, 0}, {0, 1}),
                 UnsupportedOrderError);
}

TEST(JetDerivative, NonFiniteValueCarriesProbe)
{
    auto const f = ScalarField::from(2, []<class T>(std::span<T const> x, std::span<T const> y) {
        using std::log;
        return log(x[0]) * y[0];
    });
    try {
        jet_derivative(f, ChartPoint({-1.0, 0.5}), TangentVector({1.0, 0.0}), {0}, {});
        FAIL() << "expected EvaluationError";
    }
    catch (EvaluationError const& e) {
        EXPECT_NE(std::string(e.what()).find("-1"), std::string::npos);
    }
}

TEST(FdDerivative, FirstDerivativeOfSquaredNorm)
{
    auto const f = square_norm_y(2);
    EXPECT_NEAR(fd_derivative(f, ChartPoint({0.0, 0.0}), TangentVector({1.0, 2.0}), {}, {0}), 2.0, 1e-8);
}

TEST(FdDerivative, LinearFieldIsExact)
{
    auto const f = pairing(2);
    EXPECT_NEAR(fd_derivative(f, ChartPoint({0.0, 0.0}), TangentVector({3.0, 4.0}), {0}, {}), 3.0, 1e-12);
}

TEST(FdDerivative, AgreesWithJetsOnFunkSquare)
{
    auto const F = catalog::funk(2);
    auto const f = F.finsler().squared();
    for (auto const& p : dflat::testing::probes(11, 2, 100, dflat::testing::sample_radius(1.0))) {
        double const ad = jet_derivative(f, p.x, p.y, {0}, {1});
        double const fd = fd_derivative(f, p.x, p.y, {0}, {1});
        EXPECT_LT(rel(fd, ad), 1e-5) << format_point(p.x.vec());
    }
}

TEST(JetDerivative, MixedPartialsAreSymmetric)
{
    for (auto const& [name, F] : dflat::testing::catalog_randers(3)) {
        auto const f = F.finsler().squared();
        for (auto const& p : dflat::testing::admitted_probes(F, 5, 10)) {
            double const a = jet_derivative(f, p.x, p.y, {0, 2}, {1});
            double const b = jet_derivative(f, p.x, p.y, {2, 0}, {1});
            double const c = jet_derivative(f, p.x, p.y, {0}, {1, 2});
            double const d = jet_derivative(f, p.x, p.y, {0}, {2, 1});
            EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a))) << name;
            EXPECT_LE(std::abs(c - d), 1e-12 * std::max(1.0, std::abs(c))) << name;
        }
    }
}

TEST(JetDerivative, SquaredMetricsAreTwoHomogeneous)
{
    for (auto const& [name, F] : dflat::testing::catalog_randers(2)) {
        auto const f = F.finsler().squared();
        for (auto const& p : dflat::testing::admitted_probes(F, 17, 20)) {
            double euler = 0.0;
            for (int k = 0; k < 2; ++k)
                euler += p.y[k] * jet_derivative(f, p.x, p.y, {}, {k});
            double const v = f(p.x.coords(), p.y.coords());
            EXPECT_LT(std::abs(euler - 2.0 * v), 1e-10 * std::abs(v)) << name;
        }
    }
}

TEST(Probe, PointsAndVectorsAreValidated)
{
    EXPECT_THROW(ChartPoint({1.0}), ParameterError);
    EXPECT_THROW(ChartPoint({0.0, std::numeric_limits<double>::quiet_NaN()}), ParameterError);
    EXPECT_THROW(require_slit(TangentVector({1e-9, 0.0})), DomainError);
    EXPECT_NO_THROW(require_slit(TangentVector({1e-7, 0.0})));
}
