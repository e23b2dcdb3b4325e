#pragma once

#include "sectorinfer/common/ids.hpp"
#include "sectorinfer/company/company_store.hpp"
#include "sectorinfer/framework/sector_tree.hpp"

#include <set>
#include <string>
#include <vector>

namespace sectorinfer::attribution {

inline constexpr std::size_t kDefaultThreshold = 20;

struct EligibleSector {
    SectorId sector;
    /// Direct annotations plus everything rolled up from ineligible
    /// descendants; sorted.
    std::vector<CompanyId> companies;
};

struct SectorAttribution {
    SectorId sector;
    std::size_t direct = 0;
    /// Size of the node's effective set (what it keeps if eligible, what it
    /// passes upward otherwise).
    std::size_t effective = 0;
    bool eligible = false;
};

struct AttributionResult {
    /// In bottom-up processing order (children before parents).
    std::vector<EligibleSector> eligible;
    /// Annotated companies that reached the root without meeting an eligible
    /// sector, plus annotations pointing at sectors missing from the tree.
    std::set<CompanyId> excluded;
    std::size_t threshold = kDefaultThreshold;
    /// Every sector, in depth-first index order.
    std::vector<SectorAttribution> per_sector;

    const EligibleSector* find(const SectorId& sector) const;
};

/// Depth-first bottom-up annotation attribution. A node's effective set is
/// its direct annotations plus the effective sets of its ineligible
/// children; it is eligible iff that set has at least `threshold` members.
/// Eligible children keep their companies. Throws Error{Config,
/// "BadThreshold"} for threshold 0.
AttributionResult attribute(const framework::SectorTree& tree, const company::CompanyStore& store,
                            std::size_t threshold = kDefaultThreshold);

struct SectorSamples {
    SectorId sector;
    std::string name;
    std::vector<company::FilledSample> samples;
};

struct TrainingSet {
    std::vector<SectorSamples> sectors;
    /// One line per company that could not be rendered.
    std::vector<std::string> warnings;

    std::size_t total() const;
};

/// Renders every company of every eligible sector with the eligible
/// sector's name as target (rolled-up companies are relabeled).
TrainingSet build_training_set(const AttributionResult& result, const company::CompanyStore& store,
                               const framework::SectorTree& tree);

/// Tab-separated report: sector id, name, direct, effective, eligible flag.
std::string format_report(const AttributionResult& result, const framework::SectorTree& tree);

}  // namespace sectorinfer::attribution
