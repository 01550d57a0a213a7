#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mayer/potentials.hpp"

namespace mayer {

/// Batch-run configuration.  Precedence: flags > config file > defaults.
struct RunConfig {
    nlohmann::json potential;  // normalized potential spec (kind, parameters, beta, dimension)
    int order = 14;            // truncation N for the vertex sequence and tree sum
    std::uint64_t samples = 1000000;  // Monte Carlo samples per g(n)
    std::optional<std::uint64_t> seed;
    std::string format = "text";  // json | csv | text
    bool certified_only = false;
    int workers = 1;
};

/// Minimal TOML reader covering the config surface: comments, [section]
/// headers (flattened to dotted keys), and scalar `key = value` pairs with
/// string, boolean, integer and float values.
nlohmann::json parse_toml(const std::string& text);
nlohmann::json parse_toml_file(const std::string& path);

/// Two-column CSV (r, phi) for tabulated potentials.
std::pair<std::vector<double>, std::vector<double>> load_radial_csv(const std::string& path);

/// Builds a potential from a JSON spec {kind, parameters, beta, dimension}.
/// Tabulated specs may carry the grid inline ("r", "phi") or point at a CSV
/// file ("csv").  Throws ConfigError on malformed specs.
PairPotential potential_from_json(const nlohmann::json& spec);

/// Canonical JSON spec for a potential (round-trips through potential_from_json).
nlohmann::json potential_to_json(const PairPotential& p);

}  // namespace mayer
