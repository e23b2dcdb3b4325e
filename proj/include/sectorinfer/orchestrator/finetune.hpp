#pragma once

#include "sectorinfer/attribution/attribution.hpp"
#include "sectorinfer/augmentation/eda.hpp"
#include "sectorinfer/config/run_config.hpp"
#include "sectorinfer/evaluation/metrics.hpp"
#include "sectorinfer/evaluation/qa_gate.hpp"
#include "sectorinfer/genmodel/sector_model.hpp"
#include "sectorinfer/genmodel/trainer.hpp"
#include "sectorinfer/orchestrator/inspection.hpp"
#include "sectorinfer/orchestrator/registry.hpp"
#include "sectorinfer/persistence/append_log.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sectorinfer::orchestrator {

/// Encoded, balanced and split training data. Label k is the k-th eligible
/// sector (attribution order).
struct LabeledDataset {
    std::vector<SectorId> sectors;
    std::vector<std::string> labels;
    std::vector<genmodel::Example> train;
    std::vector<genmodel::Example> validation;
};

/// balance (EDA) -> encode -> shuffle -> 9:1 train/validation split. At
/// least one example goes to validation. Throws Error{Data,
/// "NoEligibleSectors"} for an empty training set.
LabeledDataset prepare_dataset(const attribution::TrainingSet& set, const augmentation::SynonymLexicon& lexicon,
                               const genmodel::Vocabulary& vocab, const genmodel::ModelShape& shape,
                               std::uint64_t seed);

struct ValidationReport {
    evaluation::ConfusionMatrix matrix;
    evaluation::SectorMetrics metrics;
};

/// Confusion matrix of generated (or classified) sector text against the
/// gold labels; text naming no label lands in the novel column.
ValidationReport validate_model(const genmodel::ModelParams& params, genmodel::Paradigm paradigm,
                                const genmodel::Vocabulary& vocab, std::span<const genmodel::Example> examples,
                                const std::vector<std::string>& labels);

struct FinetuneInputs {
    const framework::SectorTree& tree;
    const company::CompanyStore& store;
    const augmentation::SynonymLexicon& lexicon;
    std::span<const evaluation::QaAssertion> assertions;
};

struct FinetuneOutcome {
    Scenario scenario = Scenario::FullFinetune;
    bool released = false;
    /// Candidate version (released or blocked).
    std::string version;
    evaluation::QaVerdict verdict;
    evaluation::SectorMetrics metrics;
    genmodel::TrainHistory history;
    std::vector<std::string> labels;
    std::size_t train_size = 0;
    std::size_t validation_size = 0;
};

/// Fine-tune workflow: attribute -> build training set -> balance -> split ->
/// train -> validation metrics -> QA gate -> release. Full finetunes start
/// from the pretrained backbone at config.paths.plm, incremental ones from
/// the current checkpoint with total_steps / incremental_divisor steps.
/// On a QA failure an alert is appended and neither the registry nor
/// `state` changes.
FinetuneOutcome run_finetune(Scenario scenario, const FinetuneInputs& inputs, const config::RunConfig& config,
                             ModelRegistry& registry, persistence::AppendLog& alerts, InspectionState& state,
                             Timestamp now);

/// Training schedule used for `scenario` (see run_finetune).
genmodel::TrainConfig finetune_schedule(Scenario scenario, const config::RunConfig& config);

}  // namespace sectorinfer::orchestrator
