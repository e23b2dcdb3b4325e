#pragma once

#include "sectorinfer/common/ids.hpp"
#include "sectorinfer/common/time.hpp"
#include "sectorinfer/company/company_store.hpp"
#include "sectorinfer/framework/sector_tree.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sectorinfer::synth {

/// Shape of a synthetic corpus: `groups` top-level sectors whose children
/// are the `sectors` annotated leaves.
struct SyntheticSpec {
    int sectors = 8;
    int groups = 2;
    int samples_per_sector = 40;
    /// Size of each leaf's keyword pool.
    int keywords_per_sector = 12;
    int tags_per_company = 2;
    int description_keywords = 4;
    /// Probability that a keyword is drawn from the union of all pools
    /// instead of the company's own pool.
    double noise = 0.0;

    /// Throws Error{Config, "InvalidSpec"}.
    void validate() const;
};

struct SyntheticCorpus {
    framework::SectorTree tree;
    std::vector<company::Company> companies;
    std::vector<company::AnnotationEvent> events;
    /// Leaf sector of every company.
    std::map<CompanyId, SectorId> truth;
    /// Keyword pool per leaf sector.
    std::map<SectorId, std::vector<std::string>> pools;
};

/// Deterministic in (spec, seed, at). All annotation events carry `at`.
SyntheticCorpus gen_corpus(const SyntheticSpec& spec, std::uint64_t seed, Timestamp at);

/// Number of built-in leaf sector names (upper bound on spec.sectors).
int max_sectors();

struct CorpusPaths {
    std::filesystem::path framework;
    std::filesystem::path companies;
    std::filesystem::path annotations;
};

/// Writes the framework, companies file and a fresh annotation log
/// (an existing log at that path is replaced).
void write_corpus(const SyntheticCorpus& corpus, const CorpusPaths& paths);

}  // namespace sectorinfer::synth
