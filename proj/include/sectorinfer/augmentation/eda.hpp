#pragma once

#include "sectorinfer/company/template.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sectorinfer::augmentation {

/// word -> synonyms, all lowercase. Lookup of an unknown word yields an
/// empty list.
class SynonymLexicon {
public:
    /// "word<TAB>syn1,syn2,..." per line; '#' comments allowed.
    static SynonymLexicon parse(std::string_view document);
    static SynonymLexicon load(const std::filesystem::path& path);

    void add(std::string word, std::vector<std::string> synonyms);
    const std::vector<std::string>& synonyms(std::string_view word) const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::unordered_map<std::string, std::vector<std::string>> entries_;
};

enum class EdaOp { SynonymReplacement, RandomInsertion, RandomSwap, RandomDeletion };

inline constexpr std::array<double, 4> kIntensityGrid{0.05, 0.10, 0.15, 0.20};

/// Number of tokens an operation touches: 0 for fields shorter than two
/// tokens, else max(1, floor(alpha * n)).
std::size_t touched_tokens(std::size_t n, double alpha);

/// Applies one EDA operation to a token list. Deletion always leaves at
/// least one token; operations on lists shorter than two tokens are no-ops.
std::vector<std::string> apply_op(std::vector<std::string> tokens, EdaOp op, double alpha,
                                  const SynonymLexicon& lexicon, std::mt19937_64& rng);

/// Perturbs NAME, TAGS and description independently, each with one random
/// operation at a random intensity from kIntensityGrid. Tags are treated as
/// whole units. The target text is never touched. Deterministic in `seed`.
company::FilledSample eda_augment(const company::FilledSample& sample, std::uint64_t seed,
                                  const SynonymLexicon& lexicon);

}  // namespace sectorinfer::augmentation
