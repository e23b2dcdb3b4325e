#include "sectorinfer/genmodel/vocabulary.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/text.hpp"

#include <algorithm>
#include <map>

namespace sectorinfer::genmodel {

namespace {

constexpr std::string_view kPunctuation = ",.:;!?()\"";

std::vector<std::string> special_tokens() {
    std::vector<std::string> t{"<pad>", "</s>", "<unk>"};
    for (int k = 0; k < Vocabulary::kNumSentinels; ++k) t.push_back("<extra_id_" + std::to_string(k) + ">");
    return t;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& word : text::split_whitespace(text::to_lower(text))) {
        std::string cur;
        for (char c : word) {
            if (kPunctuation.find(c) != std::string_view::npos) {
                if (!cur.empty()) out.push_back(std::move(cur));
                cur.clear();
                out.emplace_back(1, c);
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) out.push_back(std::move(cur));
    }
    return out;
}

std::string detokenize(const std::vector<std::string>& tokens) { return text::join(tokens, " "); }

std::string normalize_text(std::string_view text) { return detokenize(tokenize(text)); }

Vocabulary::Vocabulary() : tokens_(special_tokens()) {
    for (std::size_t i = 0; i < tokens_.size(); ++i) index_.emplace(tokens_[i], static_cast<int>(i));
}

Vocabulary Vocabulary::build(const std::vector<std::string>& texts, std::size_t max_size) {
    std::map<std::string, std::size_t> counts;
    for (const auto& t : texts) {
        for (auto& tok : tokenize(t)) ++counts[std::move(tok)];
    }
    auto tokens = special_tokens();
    for (const auto& s : tokens) counts.erase(s);
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    for (auto& [tok, n] : ranked) {
        if (tokens.size() >= max_size) break;
        tokens.push_back(tok);
    }
    return from_tokens(std::move(tokens));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
    const auto specials = special_tokens();
    if (tokens.size() < specials.size() || !std::equal(specials.begin(), specials.end(), tokens.begin())) {
        throw Error(ErrorKind::Data, "BadVocabulary", "special tokens missing or out of place");
    }
    Vocabulary v;
    v.tokens_ = std::move(tokens);
    v.index_.clear();
    for (std::size_t i = 0; i < v.tokens_.size(); ++i) {
        if (!v.index_.emplace(v.tokens_[i], static_cast<int>(i)).second) {
            throw Error(ErrorKind::Data, "BadVocabulary", "duplicate token '" + v.tokens_[i] + "'");
        }
    }
    return v;
}

int Vocabulary::id(std::string_view token) const {
    const auto it = index_.find(std::string(token));
    if (it == index_.end() || it->second < kNumSpecials) return kUnk;
    return it->second;
}

std::vector<int> Vocabulary::encode(std::string_view text) const {
    std::vector<int> ids;
    for (const auto& tok : tokenize(text)) ids.push_back(id(tok));
    return ids;
}

std::string Vocabulary::decode(std::span<const int> ids) const {
    std::vector<std::string> words;
    for (const int i : ids) {
        if (i == kEos) break;
        if (i == kPad) continue;
        words.push_back(token(i));
    }
    return detokenize(words);
}

}  // namespace sectorinfer::genmodel
