#pragma once

#include "sectorinfer/common/time.hpp"
#include "sectorinfer/company/company_store.hpp"
#include "sectorinfer/framework/sector_tree.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace sitest {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("sectorinfer-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline sectorinfer::Timestamp day(int n) {
    using namespace std::chrono;
    return sys_days{year{2024} / January / 1} + days{n} + hours{2};
}

inline sectorinfer::company::Company make_company(const std::string& id, const std::string& description = "") {
    sectorinfer::company::Company c;
    c.id = sectorinfer::CompanyId(id);
    c.legal_name = "company " + id;
    c.tags = {"alpha", "beta"};
    c.description = description.empty() ? "a firm numbered " + id : description;
    return c;
}

/// Random valid tree: up to `max_nodes` nodes, depth at most `max_depth`,
/// ids "n<k>", names "sector <k>".
inline sectorinfer::framework::SectorTree random_tree(std::mt19937_64& rng, int max_nodes, int max_depth) {
    using namespace sectorinfer;
    std::uniform_int_distribution<int> count(1, max_nodes);
    const int n = count(rng);
    std::vector<framework::FrameworkRecord> records;
    std::vector<int> depth;
    for (int k = 0; k < n; ++k) {
        std::vector<int> parents{-1};
        for (int j = 0; j < k; ++j) {
            if (depth[static_cast<std::size_t>(j)] < max_depth) parents.push_back(j);
        }
        const int p = parents[std::uniform_int_distribution<std::size_t>(0, parents.size() - 1)(rng)];
        depth.push_back(p < 0 ? 1 : depth[static_cast<std::size_t>(p)] + 1);
        records.push_back({SectorId("n" + std::to_string(k)), p < 0 ? SectorId() : SectorId("n" + std::to_string(p)),
                           "sector " + std::to_string(k), k});
    }
    return framework::SectorTree::from_records(std::move(records));
}

/// The small subtree used throughout: s3 under s1 with children s4..s7.
inline sectorinfer::framework::SectorTree small_fixture() {
    using namespace sectorinfer;
    return framework::SectorTree::from_records({
        {SectorId("s1"), SectorId(), "technology", 0},
        {SectorId("s2"), SectorId("s1"), "hardware", 0},
        {SectorId("s3"), SectorId("s1"), "software", 1},
        {SectorId("s4"), SectorId("s3"), "financial service", 0},
        {SectorId("s5"), SectorId("s3"), "vertical software", 1},
        {SectorId("s6"), SectorId("s3"), "gaming", 2},
        {SectorId("s7"), SectorId("s3"), "developer tools", 3},
    });
}

}  // namespace sitest
