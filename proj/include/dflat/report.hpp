#pragma once

/**
    \file
    \brief seeded verification runs and their reports

    Probes are drawn from a named PRNG stream (mt19937_64 with in-house uniform and Box-Muller transforms, so the
    stream does not depend on the standard library's distributions) and evaluated serially.
*/

#include <dflat/flatness.hpp>
#include <dflat/randers.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dflat::report {

inline constexpr char const* version = "dflat 0.1.0";
inline constexpr char const* prng_name = "mt19937_64/v1";
inline constexpr std::uint64_t default_seed = 42;
/// Sampling radius used when the metric's domain is all of R^n.
inline constexpr double unbounded_radius = 2.0;
/// Upper end of the indeterminate verdict band.
inline constexpr double indeterminate_limit = 1e-4;

struct ProbeConfig
{
    int dim = 2;
    int samples = 100;
    std::uint64_t seed = default_seed;
    std::string seed_source = "default";
    double shrink = 0.9;
    double tol = 1e-6;

    /// Throws ParameterError on count < 1, shrink outside (0, 1], tol <= 0 or dim < 2.
    void validate() const;
};

class Sampler
{
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double normal();
    /// Uniform in the open ball of the given radius, by rejection from the cube.
    std::vector<double> in_ball(int n, double radius);
    std::vector<double> on_sphere(int n);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Metric selection as given on the command line.
struct MetricSpec
{
    std::string metric = "euclidean";  ///< euclidean | funk | family | csc | dfr
    double mu = 0.0;
    double lambda = 0.0;
    int sign = 1;
    std::string as_randers_with;  ///< "" | cc | drb (csc and dfr only)
};

std::vector<std::string> metric_names();
std::vector<std::string> profile_names();

/// Throws ParameterError for unknown identifiers or invalid parameters.
RandersMetric build_metric(MetricSpec const& spec, int dim);
/// Coordinate radius of the metric's domain (possibly infinite).
double metric_radius(MetricSpec const& spec);

struct Check
{
    std::string name;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    Verdict verdict = Verdict::pass;
};

/// pass when max < tol, indeterminate when tol <= max < indeterminate_limit, fail otherwise (and on non-finite max).
Verdict classify(double max_residual, double tol);

struct FlatnessReport
{
    std::string command;
    MetricSpec spec;
    ProbeConfig config;
    std::string extra;  ///< profile or direction, empty when unused
    double sample_radius = 0.0;
    int rejected = 0;
    std::vector<Check> checks;
    std::vector<std::string> notes;  ///< human-readable lines for the table only
};

struct SampledProbe
{
    ChartPoint x;
    TangentVector y;
    TangentVector u;
};

/// Pre-generates the probe list. Points where the Randers bound fails are rejected and counted.
std::vector<SampledProbe> sample_probes(RandersMetric const& F, ProbeConfig const& config, double radius,
                                        int* rejected = nullptr);

FlatnessReport run_verify(ProbeConfig const& config, MetricSpec const& spec);
/// direction "to": F -> (h, W) -> F. direction "from": (alpha, beta) read as (h, W flat) -> F -> (h, W).
FlatnessReport run_navigate(ProbeConfig const& config, MetricSpec const& spec, std::string const& direction);
FlatnessReport run_deform(ProbeConfig const& config, MetricSpec const& spec, std::string const& profile);

std::string to_json(FlatnessReport const& report);
std::string to_table(FlatnessReport const& report);

/// 0 all pass, 1 any fail, 3 only indeterminate results besides passes.
int exit_status(FlatnessReport const& report);

}  // namespace dflat::report
