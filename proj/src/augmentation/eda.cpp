#include "sectorinfer/augmentation/eda.hpp"

#include "sectorinfer/common/text.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sectorinfer::augmentation {

namespace {

const std::vector<std::string> kNone;

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

const std::vector<std::string>& synonyms_of(const SynonymLexicon& lexicon, const std::string& token) {
    return lexicon.synonyms(text::to_lower(token));
}

std::vector<std::size_t> with_synonyms(const std::vector<std::string>& tokens, const SynonymLexicon& lexicon) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!synonyms_of(lexicon, tokens[i]).empty()) idx.push_back(i);
    }
    return idx;
}

}  // namespace

SynonymLexicon SynonymLexicon::parse(std::string_view document) {
    SynonymLexicon lex;
    for (const auto& raw : text::split(document, '\n')) {
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) continue;
        std::vector<std::string> syns;
        for (const auto& s : text::split(line.substr(tab + 1), ',')) {
            const auto t = text::trim(s);
            if (!t.empty()) syns.push_back(text::to_lower(t));
        }
        lex.add(text::to_lower(text::trim(line.substr(0, tab))), std::move(syns));
    }
    return lex;
}

SynonymLexicon SynonymLexicon::load(const std::filesystem::path& path) { return parse(persistence::read_file(path)); }

void SynonymLexicon::add(std::string word, std::vector<std::string> synonyms) {
    std::erase(synonyms, word);
    if (synonyms.empty()) return;
    auto& slot = entries_[std::move(word)];
    for (auto& s : synonyms) {
        if (std::find(slot.begin(), slot.end(), s) == slot.end()) slot.push_back(std::move(s));
    }
}

const std::vector<std::string>& SynonymLexicon::synonyms(std::string_view word) const {
    const auto it = entries_.find(std::string(word));
    return it == entries_.end() ? kNone : it->second;
}

std::size_t touched_tokens(std::size_t n, double alpha) {
    if (n < 2) return 0;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n))));
}

std::vector<std::string> apply_op(std::vector<std::string> tokens, EdaOp op, double alpha,
                                  const SynonymLexicon& lexicon, std::mt19937_64& rng) {
    const std::size_t n = touched_tokens(tokens.size(), alpha);
    if (n == 0) return tokens;

    switch (op) {
        case EdaOp::SynonymReplacement: {
            auto candidates = with_synonyms(tokens, lexicon);
            std::shuffle(candidates.begin(), candidates.end(), rng);
            candidates.resize(std::min(n, candidates.size()));
            for (const auto i : candidates) {
                const auto& syns = synonyms_of(lexicon, tokens[i]);
                tokens[i] = syns[uniform_index(rng, syns.size())];
            }
            break;
        }
        case EdaOp::RandomInsertion: {
            for (std::size_t k = 0; k < n; ++k) {
                const auto candidates = with_synonyms(tokens, lexicon);
                if (candidates.empty()) break;
                const auto& syns = synonyms_of(lexicon, tokens[candidates[uniform_index(rng, candidates.size())]]);
                const auto word = syns[uniform_index(rng, syns.size())];
                const auto pos = uniform_index(rng, tokens.size() + 1);
                tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(pos), word);
            }
            break;
        }
        case EdaOp::RandomSwap: {
            for (std::size_t k = 0; k < n; ++k) {
                const auto i = uniform_index(rng, tokens.size());
                auto j = uniform_index(rng, tokens.size() - 1);
                if (j >= i) ++j;
                std::swap(tokens[i], tokens[j]);
            }
            break;
        }
        case EdaOp::RandomDeletion: {
            std::vector<std::size_t> order(tokens.size());
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            order.resize(std::min(n, tokens.size() - 1));
            std::sort(order.rbegin(), order.rend());
            for (const auto i : order) tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    return tokens;
}

company::FilledSample eda_augment(const company::FilledSample& sample, std::uint64_t seed,
                                  const SynonymLexicon& lexicon) {
    std::mt19937_64 rng(seed);
    const auto pick = [&](std::vector<std::string> tokens) {
        const auto op = static_cast<EdaOp>(uniform_index(rng, 4));
        const double alpha = kIntensityGrid[uniform_index(rng, kIntensityGrid.size())];
        return apply_op(std::move(tokens), op, alpha, lexicon, rng);
    };

    company::TemplateFields fields;
    fields.name = text::join(pick(text::split_whitespace(sample.fields.name)), " ");
    fields.tags = pick(sample.fields.tags);
    fields.description = text::join(pick(text::split_whitespace(sample.fields.description)), " ");
    return company::make_sample(std::move(fields), sample.target_text);
}

}  // namespace sectorinfer::augmentation
