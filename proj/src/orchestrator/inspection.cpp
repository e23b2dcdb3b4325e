#include "sectorinfer/orchestrator/inspection.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/evaluation/metrics.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <nlohmann/json.hpp>

namespace sectorinfer::orchestrator {

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::SkipFinetune: return "SkipFinetune";
        case Scenario::IncrementalFinetune: return "IncrementalFinetune";
        case Scenario::FullFinetune: return "FullFinetune";
    }
    return "?";
}

std::string ScenarioDecision::reasons_text() const {
    if (reasons.empty()) return "-";
    std::string out;
    for (const auto& r : reasons) {
        if (!out.empty()) out += ",";
        out += r.trigger;
        if (!r.detail.empty()) out += ":" + r.detail;
    }
    return out;
}

InspectionState load_state(const std::filesystem::path& path) {
    InspectionState s;
    if (!std::filesystem::exists(path)) return s;
    try {
        const auto j = nlohmann::json::parse(persistence::read_file(path));
        if (!j.at("last_full_finetune_at").is_null()) {
            s.last_full_finetune_at = parse_timestamp(j.at("last_full_finetune_at").get<std::string>());
        }
        s.framework_fingerprint = j.at("framework_fingerprint").get<std::string>();
        s.current_model_version = j.at("current_model_version").get<std::string>();
        const auto& b = j.at("baseline");
        s.baseline.taken_at = parse_timestamp(b.at("taken_at").get<std::string>());
        s.baseline.event_watermark = b.at("event_watermark").get<std::size_t>();
        for (const auto& [sector, members] : b.at("members").items()) {
            auto& set = s.baseline.members[SectorId(sector)];
            for (const auto& c : members) set.insert(CompanyId(c.get<std::string>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Data, "BadState", path.string() + ": " + e.what());
    }
    return s;
}

void save_state(const InspectionState& s, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["last_full_finetune_at"] =
        s.last_full_finetune_at ? nlohmann::ordered_json(format_timestamp(*s.last_full_finetune_at)) : nlohmann::ordered_json(nullptr);
    j["framework_fingerprint"] = s.framework_fingerprint;
    j["current_model_version"] = s.current_model_version;
    nlohmann::ordered_json members = nlohmann::ordered_json::object();
    for (const auto& [sector, set] : s.baseline.members) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : set) arr.push_back(c.str());
        members[sector.str()] = std::move(arr);
    }
    j["baseline"] = {{"taken_at", format_timestamp(s.baseline.taken_at)},
                     {"event_watermark", s.baseline.event_watermark},
                     {"members", std::move(members)}};
    persistence::write_file_atomic(path, j.dump(2) + "\n");
}

ScenarioDecision inspect(const InspectionState& state, const company::CompanyStore& store,
                         const framework::SectorTree& tree, Timestamp now, const InspectionThresholds& thresholds) {
    ScenarioDecision d;
    std::vector<Reason> full, marginal;
    if (state.current_model_version.empty()) full.push_back({"NoModel", ""});
    if (state.framework_fingerprint != tree.fingerprint()) full.push_back({"FrameworkChanged", ""});
    for (const auto& id : framework::depth_first_index(tree)) {
        const auto cr = company::change_ratio(store, id, state.baseline);
        if (cr.new_sector) {
            if (cr.delta > 0) full.push_back({"NewSector", id.str()});
            continue;
        }
        const std::string detail = id.str() + "=" + evaluation::format_value(cr.ratio);
        if (cr.ratio >= thresholds.significant) {
            full.push_back({"SignificantChange", detail});
        } else if (cr.ratio >= thresholds.marginal) {
            marginal.push_back({"MarginalChange", detail});
        }
    }
    if (!full.empty()) {
        d.scenario = Scenario::FullFinetune;
        d.reasons = std::move(full);
        return d;
    }
    if (!marginal.empty()) {
        d.reasons = std::move(marginal);
        d.scenario = Scenario::IncrementalFinetune;
        const auto force = std::chrono::days(thresholds.force_days);
        if (!state.last_full_finetune_at || now - *state.last_full_finetune_at >= force) {
            d.scenario = Scenario::FullFinetune;
            d.reasons.insert(d.reasons.begin(), {"ForcedFull", std::to_string(thresholds.force_days) + "d"});
        }
    }
    return d;
}

}  // namespace sectorinfer::orchestrator
