#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sectorinfer::genmodel {

/// Lowercases, splits on whitespace and splits off the punctuation marks
/// , . : ; ! ? ( ) " as tokens of their own. Hyphens stay inside words.
std::vector<std::string> tokenize(std::string_view text);

/// Joins tokens with single spaces.
std::string detokenize(const std::vector<std::string>& tokens);

/// tokenize + detokenize; the form in which generated text is compared to
/// sector names.
std::string normalize_text(std::string_view text);

/// Dense token <-> index map. Indices 0..kNumSpecials-1 are reserved for
/// padding, end-of-sequence, unknown and the span-corruption sentinels;
/// corpus tokens can never collide with them.
class Vocabulary {
public:
    static constexpr int kPad = 0;
    static constexpr int kEos = 1;
    static constexpr int kUnk = 2;
    static constexpr int kNumSentinels = 8;
    static constexpr int kFirstSentinel = 3;
    static constexpr int kNumSpecials = kFirstSentinel + kNumSentinels;

    Vocabulary();

    /// Most frequent tokens of `texts` (ties broken alphabetically) up to a
    /// total of `max_size` entries including specials.
    static Vocabulary build(const std::vector<std::string>& texts, std::size_t max_size);

    /// Rebuilds from a full token list as stored in checkpoints. Throws
    /// Error{Data, "BadVocabulary"} if the specials are not in place.
    static Vocabulary from_tokens(std::vector<std::string> tokens);

    std::size_t size() const noexcept { return tokens_.size(); }
    int id(std::string_view token) const;
    const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }
    int sentinel(int k) const { return kFirstSentinel + k; }
    bool is_special(int id) const noexcept { return id < kNumSpecials; }

    /// Token ids of `text`; unknown words map to kUnk. No EOS appended.
    std::vector<int> encode(std::string_view text) const;

    /// Stops at the first EOS; skips padding.
    std::string decode(std::span<const int> ids) const;

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace sectorinfer::genmodel
