#pragma once

#include "sectorinfer/common/time.hpp"
#include "sectorinfer/company/company_store.hpp"
#include "sectorinfer/config/run_config.hpp"
#include "sectorinfer/framework/sector_tree.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sectorinfer::orchestrator {

using config::InspectionThresholds;

/// What the last successful finetune left behind.
struct InspectionState {
    std::optional<Timestamp> last_full_finetune_at;
    company::BaselineSnapshot baseline;
    std::string framework_fingerprint;
    std::string current_model_version;

    bool operator==(const InspectionState&) const = default;
};

/// Missing file = empty state (no model yet).
InspectionState load_state(const std::filesystem::path& path);
void save_state(const InspectionState& state, const std::filesystem::path& path);

enum class Scenario { SkipFinetune, IncrementalFinetune, FullFinetune };

std::string_view to_string(Scenario s);

struct Reason {
    std::string trigger;
    std::string detail;

    bool operator==(const Reason&) const = default;
};

struct ScenarioDecision {
    Scenario scenario = Scenario::SkipFinetune;
    std::vector<Reason> reasons;

    /// "trigger:detail,..." or "-".
    std::string reasons_text() const;
};

/// Rule-based daily inspection:
///   - no released model, a changed framework fingerprint, a sector with
///     annotations but none at baseline, or any ratio >= significant
///     -> FullFinetune;
///   - else any ratio >= marginal -> IncrementalFinetune, escalated to
///     FullFinetune when the last full finetune is force_days or more ago;
///   - else SkipFinetune.
/// Pure in its arguments.
ScenarioDecision inspect(const InspectionState& state, const company::CompanyStore& store,
                         const framework::SectorTree& tree, Timestamp now, const InspectionThresholds& thresholds);

}  // namespace sectorinfer::orchestrator
