#pragma once

#include "sectorinfer/attribution/attribution.hpp"
#include "sectorinfer/augmentation/eda.hpp"

#include <cstdint>
#include <vector>

namespace sectorinfer::augmentation {

/// zeta = 2 * max |C_m|; each sample of sector m gets floor(zeta/|C_m|) - 1
/// augmented copies, so |C'_m| = |C_m| * floor(zeta/|C_m|).
struct AugmentationPlan {
    std::size_t zeta = 0;
    struct Entry {
        SectorId sector;
        std::size_t original = 0;
        std::size_t copies_per_sample = 0;
        std::size_t balanced = 0;
    };
    std::vector<Entry> sectors;
};

/// Throws Error{Data, "EmptySectorList"} / Error{Data, "EmptySector"}.
AugmentationPlan plan_balance(const std::vector<attribution::SectorSamples>& sectors);

/// Seed for copy `copy` of sample `sample` in `sector`; independent of the
/// order in which copies are produced.
std::uint64_t derive_seed(std::uint64_t base_seed, const SectorId& sector, std::size_t sample, std::size_t copy);

/// Sample balancing via EDA. Originals come first in each sector, followed
/// by the copies of sample 0, then sample 1, and so on.
std::vector<attribution::SectorSamples> balance(const std::vector<attribution::SectorSamples>& sectors,
                                                const SynonymLexicon& lexicon, std::uint64_t base_seed);

}  // namespace sectorinfer::augmentation
