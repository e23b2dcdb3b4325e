#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/text.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"
#include "sectorinfer/synth/corpus.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cctype>
#include <cmath>
#include <set>

using namespace sectorinfer;
using namespace sectorinfer::synth;

namespace {

std::vector<std::string> words_of(std::string s) {
    for (auto& ch : s) {
        if (!std::isalnum(static_cast<unsigned char>(ch))) ch = ' ';
    }
    return text::split_whitespace(text::to_lower(s));
}

// Nearest centroid over keyword counts: each pool is a centroid, a company
// goes to the pool sharing the most tokens with its tags and description.
// Ties break towards the first pool.
double oracle_accuracy(const SyntheticCorpus& corpus) {
    std::size_t hits = 0;
    for (const auto& c : corpus.companies) {
        std::string text = c.description;
        for (const auto& t : c.tags) text += " " + t;
        const auto tokens = words_of(text);
        SectorId best;
        std::size_t best_count = 0;
        bool first = true;
        for (const auto& [sector, pool] : corpus.pools) {
            const std::set<std::string> words(pool.begin(), pool.end());
            std::size_t count = 0;
            for (const auto& tok : tokens) count += words.count(tok);
            if (first || count > best_count) {
                best = sector;
                best_count = count;
                first = false;
            }
        }
        hits += best == corpus.truth.at(c.id);
    }
    return static_cast<double>(hits) / static_cast<double>(corpus.companies.size());
}

}  // namespace

TEST_CASE("noise-free corpus is solved by the keyword oracle") {
    SyntheticSpec spec;
    spec.sectors = 4;
    spec.samples_per_sector = 40;
    const auto corpus = gen_corpus(spec, 1, sitest::day(0));
    CHECK(corpus.companies.size() == 160);
    CHECK(corpus.events.size() == 160);
    CHECK(oracle_accuracy(corpus) == 1.0);
}

TEST_CASE("fully noisy corpus leaves the oracle at chance") {
    SyntheticSpec spec;
    spec.sectors = 8;
    spec.samples_per_sector = 200;
    spec.noise = 1.0;
    const double acc = oracle_accuracy(gen_corpus(spec, 2, sitest::day(0)));
    CHECK(std::abs(acc - 0.125) < 0.04);
}

TEST_CASE("pools are disjoint and the tree is valid") {
    SyntheticSpec spec;
    spec.sectors = 16;
    spec.groups = 6;
    const auto corpus = gen_corpus(spec, 3, sitest::day(0));
    std::set<std::string> seen;
    std::size_t total = 0;
    for (const auto& [id, pool] : corpus.pools) {
        total += pool.size();
        seen.insert(pool.begin(), pool.end());
        CHECK(corpus.tree.contains(id));
    }
    CHECK(seen.size() == total);
    CHECK(corpus.tree.size() == 22);
}

TEST_CASE("same seed writes byte-identical files") {
    sitest::TempDir dir("synth");
    SyntheticSpec spec;
    spec.noise = 0.1;
    const auto write = [&](const std::string& tag, std::uint64_t seed) {
        CorpusPaths p{dir / (tag + ".tsv"), dir / (tag + ".jsonl"), dir / (tag + ".log")};
        write_corpus(gen_corpus(spec, seed, sitest::day(0)), p);
        return persistence::read_file(p.framework) + persistence::read_file(p.companies) +
               persistence::read_file(p.annotations);
    };
    const auto a = write("a", 5);
    CHECK(a == write("b", 5));
    CHECK(a != write("c", 6));
}

TEST_CASE("invalid specs") {
    const auto rejects = [](auto edit) {
        SyntheticSpec spec;
        edit(spec);
        CHECK_THROWS_AS(gen_corpus(spec, 0, sitest::day(0)), Error);
    };
    rejects([](SyntheticSpec& s) { s.sectors = 0; });
    rejects([](SyntheticSpec& s) { s.sectors = max_sectors() + 1; });
    rejects([](SyntheticSpec& s) { s.groups = 9; });
    rejects([](SyntheticSpec& s) { s.noise = 1.5; });
    rejects([](SyntheticSpec& s) { s.samples_per_sector = 0; });
    rejects([](SyntheticSpec& s) { s.keywords_per_sector = 13; });
}
