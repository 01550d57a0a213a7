#pragma once

#include <string>

#include <json.hpp>

#include "mayer/cluster.hpp"
#include "mayer/config.hpp"
#include "mayer/virial.hpp"

namespace mayer {

struct PipelineResult {
    PairPotential potential = PairPotential::ideal(3);
    VertexCoefficients vertex = VertexCoefficients::classical_only(0.0);
    ClusterReport cluster;
    VirialReport virial;
};

/// Runs the full bound pipeline for a configured potential: vertex
/// coefficients (exact where known, Monte Carlo otherwise, submultiplicative
/// padding up to the truncation order), then the cluster and virial bounds.
/// Monte Carlo requires cfg.seed (throws ConfigError without one).
PipelineResult run_pipeline(const RunConfig& cfg);

/// Combined report, schema "virial-bounds/1".  With certified_only no field
/// derived from a non-inflated Monte Carlo point estimate is emitted.
nlohmann::json report_to_json(const RunConfig& cfg, const PipelineResult& result);

std::string report_to_text(const nlohmann::json& report);
std::string report_to_csv(const nlohmann::json& report);

/// CSV table of the GRT virial bound for the power-law family (exponents
/// 4..8, beta = epsilon = sigma = 1, d = 3) next to published numerical
/// radius estimates.
std::string grt_table_csv();

/// Reference column of numerically extrapolated radii for the same family.
const std::vector<double>& grt_table_numerical_reference();

/// Oracle battery behind `verify-trees`: enumeration counts, the partition
/// scheme, truncated-weight dual paths, splitting classification, and the
/// formal-series identities.  All checks up to n_max non-root vertices.
nlohmann::json verify_suite(int n_max);

}  // namespace mayer
