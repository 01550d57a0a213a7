#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mayer/report.hpp"

namespace {

using mayer::RunConfig;

struct BoundsFlags {
    std::string potential;
    std::optional<int> dim;
    std::optional<double> radius, exponent, epsilon, sigma, beta;
    std::optional<int> order;
    std::optional<double> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    bool certified_only = false;
    std::optional<int> workers;
    std::string config_file;
};

template <typename T>
void take(std::optional<T>& dst, const nlohmann::json& file, const char* key) {
    if (!dst && file.contains(key)) dst = file[key].get<T>();
}

RunConfig resolve_config(BoundsFlags f) {
    nlohmann::json file = nlohmann::json::object();
    if (!f.config_file.empty()) file = mayer::parse_toml_file(f.config_file);

    if (f.potential.empty() && file.contains("potential"))
        f.potential = file["potential"].get<std::string>();
    take(f.dim, file, "dim");
    take(f.radius, file, "radius");
    take(f.exponent, file, "exp");
    take(f.epsilon, file, "epsilon");
    take(f.sigma, file, "sigma");
    take(f.beta, file, "beta");
    take(f.order, file, "order");
    take(f.samples, file, "samples");
    take(f.seed, file, "seed");
    take(f.format, file, "format");
    take(f.workers, file, "workers");
    if (!f.certified_only && file.contains("certified_only"))
        f.certified_only = file["certified_only"].get<bool>();

    if (f.potential.empty()) throw mayer::ConfigError("--potential is required");

    nlohmann::json spec;
    std::string kind = f.potential;
    if (kind.rfind("tabulated:", 0) == 0) {
        spec["kind"] = "tabulated";
        spec["csv"] = kind.substr(std::string("tabulated:").size());
    } else if (kind == "tabulated") {
        spec["kind"] = "tabulated";
        if (file.contains("csv")) spec["csv"] = file["csv"].get<std::string>();
    } else {
        spec["kind"] = kind;
    }
    spec["dimension"] = f.dim.value_or(3);
    spec["beta"] = f.beta.value_or(1.0);
    if (f.radius) spec["radius"] = *f.radius;
    if (f.exponent) spec["exponent"] = *f.exponent;
    if (f.epsilon || spec["kind"] == "power_law" || spec["kind"] == "power-law")
        spec["epsilon"] = f.epsilon.value_or(1.0);
    if (f.sigma || spec["kind"] == "power_law" || spec["kind"] == "power-law")
        spec["sigma"] = f.sigma.value_or(1.0);

    RunConfig cfg;
    cfg.potential = std::move(spec);
    cfg.order = f.order.value_or(14);
    if (f.samples) {
        if (*f.samples < 1 || *f.samples > 4e18)
            throw mayer::ConfigError("--samples out of range");
        cfg.samples = static_cast<std::uint64_t>(*f.samples);
    }
    cfg.seed = f.seed;
    cfg.format = f.format.value_or("text");
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
        throw mayer::ConfigError("--format must be json, csv or text");
    cfg.certified_only = f.certified_only;
    cfg.workers = f.workers.value_or(1);
    if (cfg.workers < 1 || cfg.workers > 64)
        throw mayer::ConfigError("--workers must lie in [1, 64]");
    return cfg;
}

int cmd_bounds(const BoundsFlags& flags) {
    const RunConfig cfg = resolve_config(flags);
    const mayer::PipelineResult result = mayer::run_pipeline(cfg);
    const nlohmann::json report = mayer::report_to_json(cfg, result);
    if (cfg.format == "json")
        std::cout << report.dump(2) << "\n";
    else if (cfg.format == "csv")
        std::cout << mayer::report_to_csv(report);
    else
        std::cout << mayer::report_to_text(report);
    return 0;
}

int cmd_verify(int n_max) {
    const nlohmann::json report = mayer::verify_suite(n_max);
    std::cout << report.dump(2) << "\n";
    return report["all_pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified convergence bounds for cluster and virial expansions of repulsive gases"};
    app.require_subcommand(1);

    BoundsFlags flags;
    CLI::App* bounds = app.add_subcommand("bounds", "run the full bound pipeline for a potential");
    bounds->add_option("--potential", flags.potential,
                       "hard-sphere | power-law | ideal | tabulated:<csv>");
    bounds->add_option("--dim", flags.dim, "spatial dimension (default 3)");
    bounds->add_option("--radius", flags.radius, "hard-sphere radius");
    bounds->add_option("--exp", flags.exponent, "power-law exponent");
    bounds->add_option("--epsilon", flags.epsilon, "power-law energy scale (default 1)");
    bounds->add_option("--sigma", flags.sigma, "power-law length scale (default 1)");
    bounds->add_option("--beta", flags.beta, "inverse temperature (default 1)");
    bounds->add_option("--order", flags.order, "truncation order N (default 14)");
    bounds->add_option("--samples", flags.samples, "Monte Carlo samples per g(n), e.g. 1e6");
    bounds->add_option("--seed", flags.seed, "Monte Carlo seed (required when MC is used)");
    bounds->add_option("--format", flags.format, "json | csv | text (default text)");
    bounds->add_flag("--certified-only", flags.certified_only,
                     "emit only certified fields (no raw point estimates)");
    bounds->add_option("--workers", flags.workers, "Monte Carlo worker threads (default 1)");
    bounds->add_option("--config", flags.config_file, "TOML config file (flags take precedence)");

    int verify_n = 4;
    CLI::App* verify = app.add_subcommand("verify-trees", "run the combinatorial oracle suite");
    verify->add_option("--n", verify_n, "largest number of non-root vertices (<= 7)");

    CLI::App* table = app.add_subcommand("grt-table",
                                         "GRT bounds for power-law potentials, exponents 4..8");

    try {
        app.parse(argc, argv);
        if (bounds->parsed()) return cmd_bounds(flags);
        if (verify->parsed()) return cmd_verify(verify_n);
        if (table->parsed()) {
            std::cout << mayer::grt_table_csv();
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mayer::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const mayer::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
