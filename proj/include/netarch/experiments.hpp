#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netarch/attachment.hpp"

namespace netarch {

// Parsed "netarch-config v1" experiment configuration. CLI flags override file
// values; NETARCH_WORKERS overrides the worker count between the two.
struct experiment_config {
    std::string experiment;
    attachment_function f = attachment_function::constant(1.0);
    std::uint64_t m = 1;
    std::uint64_t n = 0;
    std::vector<std::uint64_t> checkpoints;
    std::uint64_t replications = 1;
    std::uint64_t master_seed = 0;
    unsigned workers = 0;  // 0 = hardware concurrency
    std::string out;           // JSONL path ("" = skip, "-" = stdout)
    std::string summary_out;   // CSV path ("" = skip)
    nlohmann::json params = nlohmann::json::object();

    static experiment_config from_json(const nlohmann::json& j);
};

struct experiment_result {
    std::vector<nlohmann::json> records;  // one JSONL line per replication, ordered by index
    nlohmann::json summary;               // experiment-specific aggregate
    std::string summary_csv;              // tabular aggregate
    double wall_seconds = 0.0;            // reported on stderr only, never in the JSONL

    std::string jsonl() const;
};

// Maps replication indices over a worker pool. Results are ordered by index, so
// output is independent of the worker count and byte-identical across reruns.
std::vector<nlohmann::json> run_replications(
    std::uint64_t replications, std::uint64_t master_seed, unsigned workers,
    const std::function<nlohmann::json(std::uint64_t index, std::uint64_t seed)>& body);

unsigned resolve_workers(unsigned requested);

// Experiment drivers. Each consumes the shared config fields plus the keys
// documented in the README under `params`.
experiment_result run_root_hit_curve(const experiment_config& cfg);
experiment_result run_event_ak(const experiment_config& cfg);
experiment_result run_persistence(const experiment_config& cfg);
experiment_result run_maxdeg_age(const experiment_config& cfg);
experiment_result run_neighborhood(const experiment_config& cfg);
experiment_result run_embedding(const experiment_config& cfg);
experiment_result run_tn_drift(const experiment_config& cfg);
experiment_result run_winfty(const experiment_config& cfg);

// Dispatch on cfg.experiment.
experiment_result run_experiment(const experiment_config& cfg);

// Smallest K on the hit-curve grid whose Wilson lower bound reaches 1 - epsilon;
// nullopt when no grid point qualifies.
std::optional<std::uint64_t> budget_estimate(const std::vector<std::uint64_t>& k_grid,
                                             const std::vector<std::uint64_t>& hits,
                                             std::uint64_t replications, double epsilon);

}  // namespace netarch
