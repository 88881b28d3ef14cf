// dflat: seeded verification runs from the command line.

#include <dflat/errors.hpp>
#include <dflat/report.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using dflat::report::FlatnessReport;
using dflat::report::MetricSpec;
using dflat::report::ProbeConfig;

constexpr int usage_error = 2;

struct Options
{
    std::string metric;
    double mu = 0.0;
    double lambda = 0.0;
    int sign = 1;
    std::string as_randers_with;
    int dim = 2;
    int samples = 100;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    double shrink = 0.9;
    std::string out;
    std::string config;
    std::string direction = "to";
    std::string profile = "kappa0";
};

struct Bound
{
    Options opts;
    std::vector<CLI::Option*> given;  ///< options that can be overridden by the config file
    CLI::Option* seed = nullptr;
};

void add_common(CLI::App* cmd, Bound& b)
{
    auto& o = b.opts;
    b.given.push_back(cmd->add_option("--metric", o.metric, "euclidean | funk | family | csc | dfr"));
    b.given.push_back(cmd->add_option("--mu", o.mu, "curvature parameter"));
    b.given.push_back(cmd->add_option("--lambda", o.lambda, "one-form parameter"));
    b.given.push_back(cmd->add_option("--sign", o.sign, "Funk branch, +1 or -1"));
    b.given.push_back(cmd->add_option("--as-randers-with", o.as_randers_with, "one-form added to csc/dfr: cc | drb"));
    b.given.push_back(cmd->add_option("--dim", o.dim, "dimension n >= 2"));
    b.given.push_back(cmd->add_option("--samples", o.samples, "number of probes"));
    b.seed = cmd->add_option("--seed", o.seed, "64-bit PRNG seed (default: $DFLAT_SEED or 42)");
    b.given.push_back(b.seed);
    b.given.push_back(cmd->add_option("--tol", o.tol, "pass tolerance on normalized residuals"));
    b.given.push_back(cmd->add_option("--shrink", o.shrink, "domain shrink factor in (0, 1]"));
    b.given.push_back(cmd->add_option("--out", o.out, "write the JSON report to this path"));
    cmd->add_option("--config", o.config, "JSON file with the same keys as the flags");
}

std::string key_of(CLI::Option const* opt)
{
    std::string k = opt->get_lnames().front();
    return k;
}

/// Applies file values for every option not given on the command line. Returns whether the seed came from the file.
bool apply_config(Bound& b)
{
    if (b.opts.config.empty())
        return false;
    std::ifstream in(b.opts.config);
    if (!in)
        throw dflat::ParameterError("cannot read config file '" + b.opts.config + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    }
    catch (nlohmann::json::exception const& e) {
        throw dflat::ParameterError(std::string("malformed config file: ") + e.what());
    }
    if (!j.is_object())
        throw dflat::ParameterError("config file must hold a JSON object");
    bool seed_from_file = false;
    for (auto const& [key, value] : j.items()) {
        std::string norm = key;
        std::replace(norm.begin(), norm.end(), '_', '-');
        CLI::Option* target = nullptr;
        for (auto* opt : b.given)
            if (key_of(opt) == norm)
                target = opt;
        if (!target)
            throw dflat::ParameterError("unknown config key '" + key + "'");
        if (target->count() > 0)
            continue;
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        target->clear();
        target->add_result(text);
        target->run_callback();
        if (target == b.seed)
            seed_from_file = true;
    }
    return seed_from_file;
}

ProbeConfig probe_config(Bound& b, bool seed_from_file)
{
    auto const& o = b.opts;
    ProbeConfig c;
    c.dim = o.dim;
    c.samples = o.samples;
    c.tol = o.tol;
    c.shrink = o.shrink;
    if (b.seed->count() > 0 && !seed_from_file) {
        c.seed = o.seed;
        c.seed_source = "flag";
    }
    else if (seed_from_file) {
        c.seed = o.seed;
        c.seed_source = "config";
    }
    else if (char const* env = std::getenv("DFLAT_SEED")) {
        try {
            std::size_t used = 0;
            c.seed = std::stoull(env, &used);
            if (used != std::string(env).size())
                throw std::invalid_argument("trailing characters");
        }
        catch (std::exception const&) {
            throw dflat::ParameterError(std::string("DFLAT_SEED is not an unsigned integer: ") + env);
        }
        c.seed_source = "env:DFLAT_SEED";
    }
    return c;
}

MetricSpec metric_spec(Options const& o)
{
    if (o.metric.empty())
        throw dflat::ParameterError("--metric is required");
    return {o.metric, o.mu, o.lambda, o.sign, o.as_randers_with};
}

int emit(FlatnessReport const& r, Options const& o)
{
    std::cout << dflat::report::to_table(r);
    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        if (!f)
            throw dflat::ParameterError("cannot write '" + o.out + "'");
        f << dflat::report::to_json(r);
    }
    return dflat::report::exit_status(r);
}

int list()
{
    std::cout << "metrics:";
    for (auto const& m : dflat::report::metric_names())
        std::cout << ' ' << m;
    std::cout << "\none-forms for csc/dfr: cc drb\nprofiles:";
    for (auto const& p : dflat::report::profile_names())
        std::cout << ' ' << p;
    std::cout << "\nnavigate directions: to from\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dual-flatness verification for Randers metrics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dflat::report::version);

    Bound verify_b;
    Bound navigate_b;
    Bound deform_b;
    auto* verify = app.add_subcommand("verify", "run the dual-flatness check set over seeded probes");
    add_common(verify, verify_b);
    auto* navigate = app.add_subcommand("navigate", "navigation data round trip");
    add_common(navigate, navigate_b);
    navigate_b.given.push_back(
        navigate->add_option("--direction", navigate_b.opts.direction, "to | from")->check(CLI::IsMember({"to", "from"})));
    auto* deform = app.add_subcommand("deform", "deformation stage cross-checks");
    add_common(deform, deform_b);
    deform_b.given.push_back(deform->add_option("--profile", deform_b.opts.profile,
                                                "identity | navigation | kappa0 | csc_conformal"));
    app.add_subcommand("list", "list metrics and profiles");

    try {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    }
    catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    }
    catch (CLI::CallForVersion const& e) {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e) {
        app.exit(e);
        return usage_error;
    }

    try {
        if (app.got_subcommand("list"))
            return list();
        Bound* b = verify->parsed() ? &verify_b : navigate->parsed() ? &navigate_b : &deform_b;
        bool const seed_from_file = apply_config(*b);
        ProbeConfig const cfg = probe_config(*b, seed_from_file);
        MetricSpec const spec = metric_spec(b->opts);
        if (verify->parsed())
            return emit(dflat::report::run_verify(cfg, spec), b->opts);
        if (navigate->parsed())
            return emit(dflat::report::run_navigate(cfg, spec, b->opts.direction), b->opts);
        return emit(dflat::report::run_deform(cfg, spec, b->opts.profile), b->opts);
    }
    catch (dflat::ParameterError const& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage_error;
    }
    catch (CLI::ParseError const& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage_error;
    }
    catch (dflat::Error const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
