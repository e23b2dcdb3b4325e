#pragma once

#include "sectorinfer/genmodel/params.hpp"
#include "sectorinfer/genmodel/pretrain.hpp"
#include "sectorinfer/genmodel/trainer.hpp"
#include "sectorinfer/synth/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace sectorinfer::config {

/// Every file the pipeline reads or writes. Relative paths in the config
/// file resolve against the workspace directory.
struct Paths {
    std::filesystem::path framework;
    std::filesystem::path companies;
    std::filesystem::path annotations;
    std::filesystem::path lexicon;
    std::filesystem::path assertions;
    std::filesystem::path plm;
    std::filesystem::path registry;
    std::filesystem::path state;
    std::filesystem::path journal;
    std::filesystem::path alerts;
    std::filesystem::path predictions;
    std::filesystem::path prediction_events;
    std::filesystem::path ledger;
    std::filesystem::path inference_runs;
    std::filesystem::path lock;
};

struct InspectionThresholds {
    double significant = 0.75;
    double marginal = 0.1;
    int force_days = 90;
};

struct RunConfig {
    std::filesystem::path workspace;
    Paths paths;
    std::uint64_t seed = 42;
    int threads = 1;
    std::size_t attribution_threshold = 20;
    InspectionThresholds inspection;
    genmodel::ModelShape model;
    std::size_t vocab_size = 512;
    genmodel::PretrainConfig pretrain;
    genmodel::TrainConfig train;
    /// Incremental finetunes run total_steps / incremental_divisor steps.
    int incremental_divisor = 8;
    synth::SyntheticSpec synthetic;

    /// Throws Error{Config, ...} on inconsistent values.
    void validate() const;
};

/// Built-in defaults rooted at `workspace`.
RunConfig default_config(const std::filesystem::path& workspace);

/// JSON document; every key is optional and unknown keys are rejected.
/// "workspace" (default ".") resolves against `base_dir`. Throws
/// Error{Config, "BadConfig"}.
RunConfig parse_config(std::string_view json, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON rendering (all keys, paths as given).
std::string dump_config(const RunConfig& config);

/// Applies the run seed to every stochastic sub-config.
void apply_seed(RunConfig& config, std::uint64_t seed);

}  // namespace sectorinfer::config
