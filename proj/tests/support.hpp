#pragma once

#include <dflat/catalog.hpp>
#include <dflat/report.hpp>

#include <string>
#include <utility>
#include <vector>

namespace dflat::testing {

struct NamedMetric
{
    std::string name;
    RandersMetric metric;
};

/// Seeded (x, y, u) triples with x uniform in the ball of the given radius.
inline std::vector<report::SampledProbe> probes(std::uint64_t seed, int n, int count, double radius)
{
    report::Sampler rng(seed);
    std::vector<report::SampledProbe> out;
    for (int i = 0; i < count; ++i) {
        auto x = rng.in_ball(n, radius);
        auto y = rng.on_sphere(n);
        auto u = rng.on_sphere(n);
        out.push_back({ChartPoint(std::move(x)), TangentVector(std::move(y)), TangentVector(std::move(u))});
    }
    return out;
}

/// Seeded probes admitted by F (Randers bound with margin) inside the shrunk domain of F.
inline std::vector<report::SampledProbe> admitted_probes(RandersMetric const& F, std::uint64_t seed, int count)
{
    report::ProbeConfig cfg;
    cfg.dim = F.dim();
    cfg.samples = count;
    cfg.seed = seed;
    return report::sample_probes(F, cfg, catalog::shrink_factor * std::min(F.radius(), report::unbounded_radius));
}

/// Sampling radius used for a catalog domain.
inline double sample_radius(double r)
{
    return catalog::shrink_factor * std::min(r, report::unbounded_radius);
}

inline std::vector<std::pair<double, double>> family_params()
{
    return {{-1.0, 1.0}, {-1.0, -1.0}, {0.0, 1.0}, {1.0, 0.7}, {-0.25, 0.5}};
}

/// Every Randers metric in the catalog at dimension n, plus the (csc, cc) pair read as a Randers metric.
inline std::vector<NamedMetric> catalog_randers(int n)
{
    std::vector<NamedMetric> out;
    out.push_back({"euclidean", catalog::euclidean(n)});
    out.push_back({"funk+", catalog::funk(n, +1)});
    out.push_back({"funk-", catalog::funk(n, -1)});
    for (auto [mu, lambda] : family_params())
        out.push_back({"family(" + std::to_string(mu) + "," + std::to_string(lambda) + ")",
                       catalog::example_family({mu, lambda, n})});
    out.push_back({"dfr+drb", RandersMetric(catalog::dfr_metric(n, 1.0), catalog::drb_oneform(n, 0.5, 1.0))});
    return out;
}

inline RandersMetric csc_cc(int n, double mu, double lambda)
{
    return RandersMetric(catalog::csc_metric(n, mu), catalog::cc_oneform(n, lambda, mu), catalog::domain_radius(mu));
}

inline double rel(double a, double b)
{
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace dflat::testing
