#include "sectorinfer/augmentation/balance.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/hash.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace sectorinfer::augmentation {

AugmentationPlan plan_balance(const std::vector<attribution::SectorSamples>& sectors) {
    if (sectors.empty()) throw Error(ErrorKind::Data, "EmptySectorList", "nothing to balance");
    AugmentationPlan plan;
    std::size_t max_count = 0;
    for (const auto& s : sectors) {
        if (s.samples.empty()) throw Error(ErrorKind::Data, "EmptySector", s.sector.str());
        max_count = std::max(max_count, s.samples.size());
    }
    plan.zeta = 2 * max_count;
    for (const auto& s : sectors) {
        const std::size_t n = s.samples.size();
        const std::size_t multiple = plan.zeta / n;
        plan.sectors.push_back({s.sector, n, multiple - 1, n * multiple});
    }
    return plan;
}

std::uint64_t derive_seed(std::uint64_t base_seed, const SectorId& sector, std::size_t sample, std::size_t copy) {
    const std::uint64_t sector_hash = stable_hash64(sector.str());
    std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                      static_cast<std::uint32_t>(sector_hash), static_cast<std::uint32_t>(sector_hash >> 32),
                      static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(copy)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<attribution::SectorSamples> balance(const std::vector<attribution::SectorSamples>& sectors,
                                                const SynonymLexicon& lexicon, std::uint64_t base_seed) {
    const auto plan = plan_balance(sectors);
    std::vector<attribution::SectorSamples> out;
    out.reserve(sectors.size());
    for (std::size_t m = 0; m < sectors.size(); ++m) {
        const auto& src = sectors[m];
        const auto copies = plan.sectors[m].copies_per_sample;
        attribution::SectorSamples balanced{src.sector, src.name, src.samples};
        balanced.samples.reserve(plan.sectors[m].balanced);
        for (std::size_t i = 0; i < src.samples.size(); ++i) {
            for (std::size_t k = 0; k < copies; ++k) {
                balanced.samples.push_back(eda_augment(src.samples[i], derive_seed(base_seed, src.sector, i, k), lexicon));
            }
        }
        out.push_back(std::move(balanced));
    }
    return out;
}

}  // namespace sectorinfer::augmentation
