#pragma once

#include "sectorinfer/config/run_config.hpp"
#include "sectorinfer/inference/inference.hpp"
#include "sectorinfer/orchestrator/finetune.hpp"
#include "sectorinfer/orchestrator/inspection.hpp"

#include <optional>
#include <string>

namespace sectorinfer::orchestrator {

struct TickOutcome {
    Timestamp at;
    ScenarioDecision decision;
    std::optional<FinetuneOutcome> finetune;
    /// "released", "qa-blocked" or "skipped".
    std::string outcome;
    /// Released model after the tick ("" if none).
    std::string model_version;
    std::optional<inference::InferenceRun> inference;
};

/// One scheduler cycle under the workspace lock: inspect, finetune if
/// needed (QA gated), journal the decision, then run inference with the
/// current model. Ticks must not go back in time (Error{Config,
/// "NonMonotoneTick"}).
TickOutcome tick(const config::RunConfig& config, Timestamp now);

/// Journal: timestamp, scenario, reasons, outcome, model version.
struct JournalEntry {
    Timestamp at;
    std::string scenario;
    std::string reasons;
    std::string outcome;
    std::string model_version;
};

std::vector<JournalEntry> load_journal(const std::filesystem::path& path);

/// Assertions file, or none when the file does not exist.
std::vector<evaluation::QaAssertion> load_assertions_or_empty(const std::filesystem::path& path);

}  // namespace sectorinfer::orchestrator
