#include <dflat/catalog.hpp>
#include <dflat/deform.hpp>
#include <dflat/report.hpp>
#include <dflat/riemann.hpp>

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

namespace dflat::report {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

/// Streaming max/mean of per-probe residuals; a NaN entry (failed evaluation) poisons the max.
class Accumulator
{
public:
    explicit Accumulator(std::string name) : name_(std::move(name)) {}

    void add(double v)
    {
        if (std::isnan(v) || std::isnan(max_))
            max_ = nan;
        else
            max_ = std::max(max_, v);
        sum_ += v;
        ++count_;
    }

    /// Evaluates f and records its value, or NaN if it throws a library error.
    void record(std::function<double()> const& f)
    {
        double v;
        try {
            v = f();
        }
        catch (Error const&) {
            v = nan;
        }
        add(v);
    }

    Check finish(double tol) const
    {
        Check c;
        c.name = name_;
        c.max_residual = count_ ? max_ : 0.0;
        c.mean_residual = count_ ? sum_ / count_ : 0.0;
        c.verdict = classify(c.max_residual, tol);
        return c;
    }

private:
    std::string name_;
    double max_ = 0.0;
    double sum_ = 0.0;
    int count_ = 0;
};

bool has_oneform(MetricSpec const& spec)
{
    return spec.metric == "funk" || spec.metric == "family" || !spec.as_randers_with.empty();
}

double rel_matrix(Mat<double> const& a, Mat<double> const& b)
{
    return frobenius_distance(a, b) / (1.0 + frobenius_norm(b));
}

double rel_vector(std::vector<double> const& a, std::vector<double> const& b)
{
    return distance2(a, b) / (1.0 + norm2(b));
}

FlatnessReport start(char const* command, ProbeConfig const& config, MetricSpec const& spec)
{
    config.validate();
    FlatnessReport r;
    r.command = command;
    r.spec = spec;
    r.config = config;
    r.sample_radius = config.shrink * std::min(metric_radius(spec), unbounded_radius);
    return r;
}

std::string format_vec(std::vector<double> const& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += fmt::format("{}{:.6g}", i ? ", " : "", v[i]);
    return s + ")";
}

DeformationProfile profile_by_name(std::string const& name, MetricSpec const& spec)
{
    if (name == "identity")
        return DeformationProfile::identity();
    if (name == "navigation")
        return DeformationProfile::navigation();
    if (name == "kappa0")
        return DeformationProfile::kappa_zero();
    if (name == "csc_conformal")
        return DeformationProfile::csc_conformal(spec.mu, spec.lambda);
    throw ParameterError("unknown profile '" + name + "'");
}

}  // namespace

void ProbeConfig::validate() const
{
    if (dim < 2)
        throw ParameterError("dimension must be at least 2");
    if (samples < 1)
        throw ParameterError("sample count must be at least 1");
    if (!(shrink > 0.0 && shrink <= 1.0))
        throw ParameterError("shrink factor must lie in (0, 1]");
    if (!(tol > 0.0))
        throw ParameterError("tolerance must be positive");
}

double Sampler::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Sampler::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0)
        u1 = uniform();
    double const u2 = uniform();
    double const r = std::sqrt(-2.0 * std::log(u1));
    double const phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

std::vector<double> Sampler::in_ball(int n, double radius)
{
    std::vector<double> x(static_cast<std::size_t>(n));
    while (true) {
        double s = 0.0;
        for (auto& v : x) {
            v = radius * (2.0 * uniform() - 1.0);
            s += v * v;
        }
        if (std::sqrt(s) < radius)
            return x;
    }
}

std::vector<double> Sampler::on_sphere(int n)
{
    std::vector<double> y(static_cast<std::size_t>(n));
    while (true) {
        double s = 0.0;
        for (auto& v : y) {
            v = normal();
            s += v * v;
        }
        if (s > 1e-12) {
            double const r = std::sqrt(s);
            for (auto& v : y)
                v /= r;
            return y;
        }
    }
}

std::vector<std::string> metric_names()
{
    return {"euclidean", "funk", "family", "csc", "dfr"};
}

std::vector<std::string> profile_names()
{
    return {"identity", "navigation", "kappa0", "csc_conformal"};
}

double metric_radius(MetricSpec const& spec)
{
    if (spec.metric == "euclidean")
        return std::numeric_limits<double>::infinity();
    if (spec.metric == "funk")
        return 1.0;
    return catalog::domain_radius(spec.mu);
}

RandersMetric build_metric(MetricSpec const& spec, int dim)
{
    auto const& m = spec.metric;
    bool const plain = m == "euclidean" || m == "funk" || m == "family";
    if (plain && !spec.as_randers_with.empty())
        throw ParameterError("--as-randers-with applies to csc and dfr only");
    if (!std::isfinite(spec.mu) || !std::isfinite(spec.lambda))
        throw ParameterError("parameters must be finite");
    if (m == "euclidean")
        return catalog::euclidean(dim);
    if (m == "funk")
        return catalog::funk(dim, spec.sign);
    if (m == "family")
        return catalog::example_family({spec.mu, spec.lambda, dim});
    if (m != "csc" && m != "dfr")
        throw ParameterError("unknown metric '" + m + "'");
    MetricField alpha = m == "csc" ? catalog::csc_metric(dim, spec.mu) : catalog::dfr_metric(dim, spec.mu);
    OneFormField beta;
    if (spec.as_randers_with.empty())
        beta = OneFormField::zero(dim);
    else if (spec.as_randers_with == "cc")
        beta = catalog::cc_oneform(dim, spec.lambda, spec.mu);
    else if (spec.as_randers_with == "drb")
        beta = catalog::drb_oneform(dim, spec.lambda, spec.mu);
    else
        throw ParameterError("unknown one-form '" + spec.as_randers_with + "'");
    return RandersMetric(std::move(alpha), std::move(beta), metric_radius(spec));
}

Verdict classify(double max_residual, double tol)
{
    if (!std::isfinite(max_residual))
        return Verdict::fail;
    if (max_residual < tol)
        return Verdict::pass;
    if (max_residual < indeterminate_limit)
        return Verdict::indeterminate;
    return Verdict::fail;
}

std::vector<SampledProbe> sample_probes(RandersMetric const& F, ProbeConfig const& config, double radius,
                                        int* rejected)
{
    Sampler rng(config.seed);
    std::vector<SampledProbe> out;
    int misses = 0;
    long const limit = 1000L * config.samples;
    while (static_cast<int>(out.size()) < config.samples) {
        auto x = rng.in_ball(config.dim, radius);
        try {
            F.check_admitted(ChartPoint(x));
        }
        catch (DomainError const&) {
            if (++misses > limit)
                throw ParameterError("no admissible probes: the Randers bound fails on the sampling ball");
            continue;
        }
        auto y = rng.on_sphere(config.dim);
        auto u = rng.on_sphere(config.dim);
        out.push_back({ChartPoint(std::move(x)), TangentVector(std::move(y)), TangentVector(std::move(u))});
    }
    if (rejected)
        *rejected = misses;
    return out;
}

FlatnessReport run_verify(ProbeConfig const& config, MetricSpec const& spec)
{
    FlatnessReport r = start("verify", config, spec);
    RandersMetric const F = build_metric(spec, config.dim);
    auto const probes = sample_probes(F, config, r.sample_radius, &r.rejected);
    ScalarField const f = F.finsler();

    Accumulator flat("dual_flatness");
    std::array<Accumulator, 3> items{Accumulator("equivalence.finsler"), Accumulator("equivalence.navigation"),
                                     Accumulator("equivalence.deformed")};
    std::array<Accumulator, 3> lemmas{Accumulator("lemma.stretch"), Accumulator("lemma.conformal"),
                                      Accumulator("lemma.rescale")};
    std::optional<Accumulator> closed;
    ScalarField reference;
    if (spec.metric == "funk") {
        closed.emplace("closed_form");
        reference = catalog::funk_closed_form(config.dim, spec.sign);
    }
    else if (spec.metric == "family") {
        closed.emplace("closed_form");
        reference = catalog::family_closed_form({spec.mu, spec.lambda, config.dim});
    }
    std::optional<Accumulator> curvature;
    double expected_k = 0.0;
    bool flag = false;
    if (spec.metric == "funk") {
        curvature.emplace("curvature.flag");
        expected_k = -0.25;
        flag = true;
    }
    else if (spec.metric == "csc" || spec.metric == "euclidean") {
        curvature.emplace("curvature.sectional");
        expected_k = spec.metric == "csc" ? spec.mu : 0.0;
    }

    auto const profile = DeformationProfile::navigation();
    auto const deformed = deform(F.alpha(), F.beta(), profile);
    for (auto const& p : probes) {
        flat.record([&] { return dual_flatness_residual(f, p.x, p.y).normalized; });
        std::array<double, 3> res{nan, nan, nan};
        try {
            res = main1_item_residuals(F, {p.x, p.y});
        }
        catch (Error const&) {
        }
        for (int k = 0; k < 3; ++k)
            items[k].add(res[k]);
        try {
            auto const in = lemma_inputs(F.alpha(), F.beta(), profile, p.x, p.y);
            auto const s1 = lemma1_predicted(in);
            auto const s2 = lemma2_predicted(in, s1);
            auto const s3 = lemma3_predicted(in, s2);
            lemmas[0].add(stage_mismatch(s1, direct_stage(deformed, Stage::stretch, p.x, p.y)));
            lemmas[1].add(stage_mismatch(s2, direct_stage(deformed, Stage::conformal, p.x, p.y)));
            lemmas[2].add(stage_mismatch(s3, direct_stage(deformed, Stage::rescale, p.x, p.y)));
        }
        catch (Error const&) {
            for (auto& l : lemmas)
                l.add(nan);
        }
        if (closed)
            closed->record([&] {
                double const v = f(p.x.coords(), p.y.coords());
                return std::abs(v - reference(p.x.coords(), p.y.coords())) / (1.0 + std::abs(v));
            });
        if (curvature)
            curvature->record([&] {
                double const k = flag ? flag_curvature(f, p.x, p.y, p.u) : sectional_curvature(F.alpha(), p.x, p.y, p.u);
                return std::abs(k - expected_k);
            });
    }

    r.checks.push_back(flat.finish(config.tol));
    for (auto const& a : items)
        r.checks.push_back(a.finish(config.tol));
    Check coherence;
    coherence.name = "equivalence.coherence";
    auto const n = r.checks.size();
    bool const agree = r.checks[n - 3].verdict == r.checks[n - 2].verdict && r.checks[n - 2].verdict == r.checks[n - 1].verdict;
    coherence.max_residual = coherence.mean_residual = agree ? 0.0 : 1.0;
    coherence.verdict = classify(coherence.max_residual, config.tol);
    r.checks.push_back(coherence);
    for (auto const& a : lemmas)
        r.checks.push_back(a.finish(config.tol));
    if (closed)
        r.checks.push_back(closed->finish(config.tol));
    if (curvature)
        r.checks.push_back(curvature->finish(config.tol));
    return r;
}

FlatnessReport run_navigate(ProbeConfig const& config, MetricSpec const& spec, std::string const& direction)
{
    if (direction != "to" && direction != "from")
        throw ParameterError("direction must be 'to' or 'from'");
    FlatnessReport r = start("navigate", config, spec);
    r.extra = direction;
    RandersMetric const F = build_metric(spec, config.dim);
    auto const probes = sample_probes(F, config, r.sample_radius, &r.rejected);
    int const n = config.dim;

    Accumulator metric_trip("navigation.roundtrip_metric");
    Accumulator form_trip("navigation.roundtrip_oneform");
    std::optional<Accumulator> h_check;
    std::optional<Accumulator> w_check;

    if (direction == "to") {
        auto const nav = to_navigation(F);
        auto const back = from_navigation(nav);
        if (spec.metric == "funk") {
            h_check.emplace("navigation.h_closed_form");
            w_check.emplace("navigation.wind_closed_form");
        }
        else if (!has_oneform(spec)) {
            w_check.emplace("navigation.wind_closed_form");
        }
        for (auto const& p : probes) {
            auto const xs = p.x.coords();
            metric_trip.record([&] { return rel_matrix(back.alpha()(xs), F.alpha()(xs)); });
            form_trip.record([&] { return rel_vector(back.beta()(xs), F.beta()(xs)); });
            if (h_check)
                h_check->record([&] { return rel_matrix(nav.h()(xs), Mat<double>::identity(n)); });
            if (w_check)
                w_check->record([&] {
                    std::vector<double> expect(static_cast<std::size_t>(n), 0.0);
                    if (spec.metric == "funk")
                        for (int i = 0; i < n; ++i)
                            expect[i] = -spec.sign * p.x[i];
                    return rel_vector(nav.wind()(xs), expect);
                });
        }
        auto const& x0 = probes.front().x;
        r.notes.push_back("x = " + format_point(x0.vec()));
        r.notes.push_back("W(x) = " + format_vec(nav.wind()(x0.coords())));
        r.notes.push_back(fmt::format("|W|_h(x) = {:.6g}", nav.wind_norm(x0)));
    }
    else {
        MetricField const h = F.alpha();
        OneFormField const flat = F.beta();
        auto wind = VectorField::from(n, [h, flat]<class T>(std::span<T const> x) { return solve(h(x), flat(x)); });
        NavigationData const nav(h, wind, F.radius());
        auto const G = from_navigation(nav);
        auto const back = to_navigation(G);
        for (auto const& p : probes) {
            auto const xs = p.x.coords();
            metric_trip.record([&] { return rel_matrix(back.h()(xs), h(xs)); });
            form_trip.record([&] { return rel_vector(back.wind()(xs), wind(xs)); });
        }
        auto const& x0 = probes.front().x;
        r.notes.push_back("x = " + format_point(x0.vec()));
        r.notes.push_back("b(x) of the Randers metric = " + format_vec(G.beta()(x0.coords())));
    }
    r.checks.push_back(metric_trip.finish(config.tol));
    r.checks.push_back(form_trip.finish(config.tol));
    if (h_check)
        r.checks.push_back(h_check->finish(config.tol));
    if (w_check)
        r.checks.push_back(w_check->finish(config.tol));
    return r;
}

FlatnessReport run_deform(ProbeConfig const& config, MetricSpec const& spec, std::string const& profile_name)
{
    FlatnessReport r = start("deform", config, spec);
    r.extra = profile_name;
    auto const profile = profile_by_name(profile_name, spec);
    RandersMetric const F = build_metric(spec, config.dim);
    auto const probes = sample_probes(F, config, r.sample_radius, &r.rejected);
    auto const data = deform(F.alpha(), F.beta(), profile);

    std::array<Accumulator, 3> lemmas{Accumulator("lemma.stretch"), Accumulator("lemma.conformal"),
                                      Accumulator("lemma.rescale")};
    Accumulator shape("output.riemann_shape");
    Accumulator related("output.dually_related");
    bool const solves = profile_name == "navigation" || profile_name == "kappa0";
    Accumulator conditions("profile.conditions");

    for (auto const& p : probes) {
        double t = nan;
        try {
            auto const in = lemma_inputs(F.alpha(), F.beta(), profile, p.x, p.y);
            t = in.d.b2;
            auto const s1 = lemma1_predicted(in);
            auto const s2 = lemma2_predicted(in, s1);
            auto const s3 = lemma3_predicted(in, s2);
            lemmas[0].add(stage_mismatch(s1, direct_stage(data, Stage::stretch, p.x, p.y)));
            lemmas[1].add(stage_mismatch(s2, direct_stage(data, Stage::conformal, p.x, p.y)));
            lemmas[2].add(stage_mismatch(s3, direct_stage(data, Stage::rescale, p.x, p.y)));
        }
        catch (Error const&) {
            for (auto& l : lemmas)
                l.add(nan);
        }
        try {
            auto const fit = extract_riemann_theta(data.bar.alpha, p.x);
            shape.add(fit.residual);
            related.add(dually_related_check(data.bar.alpha, data.bar.beta, fit.theta, p.x).residual);
        }
        catch (Error const&) {
            shape.add(nan);
            related.add(nan);
        }
        if (solves) {
            auto const c = profile_conditions(profile, t);
            conditions.add(std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])}));
        }
    }
    for (auto const& a : lemmas)
        r.checks.push_back(a.finish(config.tol));
    if (solves)
        r.checks.push_back(conditions.finish(config.tol));
    r.checks.push_back(shape.finish(config.tol));
    r.checks.push_back(related.finish(config.tol));
    return r;
}

std::string to_json(FlatnessReport const& report)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["metric"] = report.spec.metric;
    j["params"] = {{"mu", report.spec.mu},
                   {"lambda", report.spec.lambda},
                   {"sign", report.spec.sign},
                   {"as_randers_with", report.spec.as_randers_with}};
    ordered_json cfg = {{"command", report.command},
                        {"dim", report.config.dim},
                        {"samples", report.config.samples},
                        {"seed", report.config.seed},
                        {"seed_source", report.config.seed_source},
                        {"prng", prng_name},
                        {"shrink", report.config.shrink},
                        {"tol", report.config.tol},
                        {"indeterminate_limit", indeterminate_limit},
                        {"sample_radius", report.sample_radius},
                        {"rejected", report.rejected}};
    if (report.command == "navigate")
        cfg["direction"] = report.extra;
    else if (report.command == "deform")
        cfg["profile"] = report.extra;
    j["config"] = cfg;
    ordered_json checks = ordered_json::array();
    for (auto const& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"max_residual", c.max_residual},
                          {"mean_residual", c.mean_residual},
                          {"verdict", to_string(c.verdict)}});
    j["checks"] = checks;
    j["version"] = version;
    return j.dump(2) + "\n";
}

std::string to_table(FlatnessReport const& report)
{
    std::string out = fmt::format("{} {}  mu={} lambda={} dim={} samples={} seed={} ({})\n", report.command,
                                  report.spec.metric, report.spec.mu, report.spec.lambda, report.config.dim,
                                  report.config.samples, report.config.seed, report.config.seed_source);
    if (!report.spec.as_randers_with.empty())
        out += fmt::format("one-form: {}\n", report.spec.as_randers_with);
    if (!report.extra.empty())
        out += fmt::format("{}: {}\n", report.command == "navigate" ? "direction" : "profile", report.extra);
    for (auto const& line : report.notes)
        out += line + "\n";
    out += fmt::format("{:<32} {:>12} {:>12}  {}\n", "check", "max", "mean", "verdict");
    for (auto const& c : report.checks)
        out += fmt::format("{:<32} {:>12.3e} {:>12.3e}  {}\n", c.name, c.max_residual, c.mean_residual,
                           to_string(c.verdict));
    return out;
}

int exit_status(FlatnessReport const& report)
{
    bool indeterminate = false;
    for (auto const& c : report.checks) {
        if (c.verdict == Verdict::fail)
            return 1;
        indeterminate = indeterminate || c.verdict == Verdict::indeterminate;
    }
    return indeterminate ? 3 : 0;
}

}  // namespace dflat::report
