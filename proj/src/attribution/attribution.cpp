#include "sectorinfer/attribution/attribution.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/persistence/record.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace sectorinfer::attribution {

const EligibleSector* AttributionResult::find(const SectorId& sector) const {
    const auto it = std::find_if(eligible.begin(), eligible.end(), [&](const auto& e) { return e.sector == sector; });
    return it == eligible.end() ? nullptr : &*it;
}

std::size_t TrainingSet::total() const {
    std::size_t n = 0;
    for (const auto& s : sectors) n += s.samples.size();
    return n;
}

AttributionResult attribute(const framework::SectorTree& tree, const company::CompanyStore& store,
                            std::size_t threshold) {
    if (threshold == 0) throw Error(ErrorKind::Config, "BadThreshold", "attribution threshold must be >= 1");

    AttributionResult result;
    result.threshold = threshold;

    std::map<SectorId, std::set<CompanyId>> direct;
    for (auto& [sector, members] : store.active_members()) {
        if (tree.contains(sector)) {
            direct[sector] = std::move(members);
        } else {
            result.excluded.insert(members.begin(), members.end());
        }
    }

    std::map<SectorId, SectorAttribution> stats;
    // Returns the set that rolls up into the parent (empty if eligible).
    std::function<std::set<CompanyId>(const SectorId&)> visit = [&](const SectorId& id) {
        std::set<CompanyId> effective;
        if (const auto it = direct.find(id); it != direct.end()) effective = it->second;
        const std::size_t own = effective.size();
        for (const auto& child : tree.children(id)) {
            auto rolled = visit(child);
            effective.merge(rolled);
        }
        stats[id] = {id, own, effective.size(), effective.size() >= threshold};
        if (effective.size() >= threshold) {
            result.eligible.push_back({id, {effective.begin(), effective.end()}});
            return std::set<CompanyId>{};
        }
        return effective;
    };

    for (const auto& top : tree.children(SectorId{})) {
        auto leftover = visit(top);
        result.excluded.merge(leftover);
    }
    for (const auto& id : framework::depth_first_index(tree)) result.per_sector.push_back(stats.at(id));
    return result;
}

TrainingSet build_training_set(const AttributionResult& result, const company::CompanyStore& store,
                               const framework::SectorTree& tree) {
    TrainingSet set;
    for (const auto& e : result.eligible) {
        SectorSamples out{e.sector, tree.node(e.sector).name, {}};
        out.samples.reserve(e.companies.size());
        for (const auto& cid : e.companies) {
            const auto* c = store.find_company(cid);
            if (!c) {
                set.warnings.push_back("missing company " + cid.str() + " (sector " + e.sector.str() + ")");
                continue;
            }
            out.samples.push_back(company::render_template(*c, out.name));
        }
        set.sectors.push_back(std::move(out));
    }
    return set;
}

std::string format_report(const AttributionResult& result, const framework::SectorTree& tree) {
    std::string out = "# sector\tname\tdirect\trolled_up\teligible\n";
    for (const auto& s : result.per_sector) {
        out += persistence::join_record({s.sector.str(), tree.node(s.sector).name, std::to_string(s.direct),
                                         std::to_string(s.effective), s.eligible ? "yes" : "no"});
        out.push_back('\n');
    }
    out += "# eligible=" + std::to_string(result.eligible.size()) + " excluded_companies=" +
           std::to_string(result.excluded.size()) + " threshold=" + std::to_string(result.threshold) + "\n";
    return out;
}

}  // namespace sectorinfer::attribution
