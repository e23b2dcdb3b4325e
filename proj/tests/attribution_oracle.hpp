#pragma once

#include "sectorinfer/attribution/attribution.hpp"
#include "support.hpp"

#include <functional>
#include <map>
#include <set>

namespace sitest {

using sectorinfer::CompanyId;
using sectorinfer::SectorId;
using sectorinfer::attribution::AttributionResult;
namespace framework = sectorinfer::framework;
namespace company = sectorinfer::company;

/// One fresh company per count unit, annotated on day 0.
inline company::CompanyStore annotated(const framework::SectorTree& tree,
                                       const std::vector<std::pair<SectorId, int>>& counts) {
    company::CompanyStore store;
    int next = 0;
    for (const auto& [sector, n] : counts) {
        for (int i = 0; i < n; ++i) {
            const CompanyId id("c" + std::to_string(next++));
            store.upsert_company(sitest::make_company(id.str()));
            store.annotate(id, sector, tree, sitest::day(0));
        }
    }
    return store;
}

// Independent reference: eligibility by memoized recursion on counts, then
// each company goes to its lowest eligible ancestor-or-self.
inline std::map<SectorId, std::set<CompanyId>> oracle(const framework::SectorTree& tree,
                                                      const company::CompanyStore& store, std::size_t threshold,
                                                      std::set<CompanyId>& excluded) {
    std::map<SectorId, std::size_t> direct;
    for (const auto& [sector, members] : store.active_members()) direct[sector] = members.size();
    std::map<SectorId, std::pair<std::size_t, bool>> memo;
    std::function<std::pair<std::size_t, bool>(const SectorId&)> eval = [&](const SectorId& n) {
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        std::size_t eff = direct[n];
        for (const auto& c : tree.children(n)) {
            const auto [count, eligible] = eval(c);
            if (!eligible) eff += count;
        }
        return memo[n] = {eff, eff >= threshold};
    };
    std::map<SectorId, std::set<CompanyId>> out;
    for (const auto& [sector, members] : store.active_members()) {
        for (const auto& c : members) {
            if (!tree.contains(sector)) {
                excluded.insert(c);
                continue;
            }
            std::vector<SectorId> path{sector};
            for (const auto& a : tree.ancestors(sector)) path.push_back(a);
            bool placed = false;
            for (const auto& s : path) {
                if (eval(s).second) {
                    out[s].insert(c);
                    placed = true;
                    break;
                }
            }
            if (!placed) excluded.insert(c);
        }
    }
    return out;
}

inline std::map<SectorId, std::set<CompanyId>> as_map(const AttributionResult& r) {
    std::map<SectorId, std::set<CompanyId>> out;
    for (const auto& e : r.eligible) out[e.sector] = {e.companies.begin(), e.companies.end()};
    return out;
}


}  // namespace sitest
