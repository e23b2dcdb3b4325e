#pragma once

#include "sectorinfer/company/company_store.hpp"
#include "sectorinfer/config/run_config.hpp"
#include "sectorinfer/framework/sector_tree.hpp"
#include "sectorinfer/genmodel/checkpoint.hpp"
#include "sectorinfer/inference/inference.hpp"
#include "sectorinfer/orchestrator/finetune.hpp"

#include <map>
#include <vector>

namespace sectorinfer::orchestrator {

/// Texts the backbone is pretrained on: every company's filled input plus
/// every sector name. Sorted by company id, then tree order.
std::vector<std::string> pretraining_texts(const company::CompanyStore& store, const framework::SectorTree& tree);

/// Builds the vocabulary from pretraining_texts and pretrains theta_1 with
/// span corruption. The result carries the vocabulary and an empty head.
genmodel::Checkpoint pretrain_backbone(const company::CompanyStore& store, const framework::SectorTree& tree,
                                       const config::RunConfig& config);

/// Scores stored predictions against annotations: gold is the eligible
/// sector each annotated company is attributed to, the prediction its
/// generated text. Companies without a prediction are skipped.
ValidationReport evaluate_predictions(const company::CompanyStore& store, const framework::SectorTree& tree,
                                      const std::map<CompanyId, inference::PredictionRecord>& predictions,
                                      std::size_t threshold);

}  // namespace sectorinfer::orchestrator
