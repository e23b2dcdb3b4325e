#include "sectorinfer/company/company_store.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/hash.hpp"
#include "sectorinfer/persistence/append_log.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <nlohmann/json.hpp>

namespace sectorinfer::company {

namespace {

constexpr std::string_view kCompaniesSchema = "companies";
constexpr int kCompaniesVersion = 1;

[[noreturn]] void fail(const char* code, const std::string& detail) { throw Error(ErrorKind::Data, code, detail); }

}  // namespace

std::string compute_feature_version(const Company& c) {
    Sha256 h;
    h.field(c.legal_name).update_u64(c.tags.size());
    for (const auto& t : c.tags) h.field(t);
    h.field(c.description);
    return h.hex().substr(0, 16);
}

std::string_view to_string(AnnotationAction a) { return a == AnnotationAction::Add ? "add" : "remove"; }

AnnotationAction parse_action(std::string_view s) {
    if (s == "add") return AnnotationAction::Add;
    if (s == "remove") return AnnotationAction::Remove;
    fail("BadAction", std::string(s));
}

std::size_t BaselineSnapshot::count(const SectorId& sector) const {
    const auto it = members.find(sector);
    return it == members.end() ? 0 : it->second.size();
}

const Company& CompanyStore::upsert_company(Company company) {
    if (company.id.empty()) fail("EmptyId", "company id is empty");
    company.feature_version = compute_feature_version(company);
    auto& slot = companies_[company.id];
    slot = std::move(company);
    return slot;
}

const Company* CompanyStore::find_company(const CompanyId& id) const {
    const auto it = companies_.find(id);
    return it == companies_.end() ? nullptr : &it->second;
}

void CompanyStore::record(AnnotationEvent event, std::vector<AnnotationEvent>* out) {
    apply(event);
    if (out) out->push_back(std::move(event));
}

void CompanyStore::close_active(const CompanyId& company, Timestamp at, std::vector<AnnotationEvent>& out) {
    const auto it = active_.find(company);
    if (it == active_.end()) return;
    record({at, company, history_[it->second].sector_id, AnnotationAction::Remove}, &out);
}

std::vector<AnnotationEvent> CompanyStore::annotate(const CompanyId& company, const SectorId& sector,
                                                    const framework::SectorTree& tree, Timestamp at) {
    if (!find_company(company)) fail("UnknownCompany", company.str());
    if (!tree.contains(sector)) fail("UnknownSector", sector.str());
    std::vector<AnnotationEvent> out;
    if (const auto cur = active_annotation(company); cur && cur->sector_id == sector) return out;
    close_active(company, at, out);
    record({at, company, sector, AnnotationAction::Add}, &out);
    return out;
}

std::vector<AnnotationEvent> CompanyStore::unannotate(const CompanyId& company, Timestamp at) {
    if (!find_company(company)) fail("UnknownCompany", company.str());
    std::vector<AnnotationEvent> out;
    close_active(company, at, out);
    return out;
}

std::vector<AnnotationEvent> CompanyStore::orphan_sectors(std::span<const SectorId> removed, Timestamp at) {
    const std::set<SectorId> gone(removed.begin(), removed.end());
    std::vector<CompanyId> affected;
    for (const auto& [company, idx] : active_) {
        if (gone.count(history_[idx].sector_id)) affected.push_back(company);
    }
    std::vector<AnnotationEvent> out;
    for (const auto& company : affected) close_active(company, at, out);
    return out;
}

void CompanyStore::apply(const AnnotationEvent& event) {
    const auto it = active_.find(event.company);
    if (event.action == AnnotationAction::Add) {
        // An add on a company with an open annotation implicitly closes it.
        if (it != active_.end()) history_[it->second].active = false;
        active_[event.company] = history_.size();
        history_.push_back({event.company, event.sector, event.at, true});
    } else {
        if (it == active_.end() || history_[it->second].sector_id != event.sector) {
            fail("InconsistentEvent", "remove of inactive annotation " + event.company.str() + " -> " + event.sector.str());
        }
        history_[it->second].active = false;
        active_.erase(it);
    }
    events_.push_back(event);
}

std::optional<Annotation> CompanyStore::active_annotation(const CompanyId& company) const {
    const auto it = active_.find(company);
    if (it == active_.end()) return std::nullopt;
    return history_[it->second];
}

std::map<SectorId, std::set<CompanyId>> CompanyStore::active_members() const {
    std::map<SectorId, std::set<CompanyId>> out;
    for (const auto& [company, idx] : active_) out[history_[idx].sector_id].insert(company);
    return out;
}

std::vector<Annotation> CompanyStore::orphaned(const framework::SectorTree& tree) const {
    std::vector<Annotation> out;
    for (const auto& a : history_) {
        if (!tree.contains(a.sector_id)) out.push_back(a);
    }
    return out;
}

FilledSample CompanyStore::render(const CompanyId& company, const framework::SectorTree& tree) const {
    const auto* c = find_company(company);
    if (!c) fail("UnknownCompany", company.str());
    std::string target;
    if (const auto a = active_annotation(company)) {
        if (const auto* node = tree.find(a->sector_id)) target = node->name;
    }
    return render_template(*c, std::move(target));
}

FilledSample render_template(const Company& company, std::string target) {
    return make_sample({company.legal_name, company.tags, company.description}, std::move(target));
}

BaselineSnapshot snapshot_baseline(const CompanyStore& store, const framework::SectorTree& tree, Timestamp at) {
    BaselineSnapshot snap;
    snap.taken_at = at;
    snap.event_watermark = store.events().size();
    for (const auto& [id, node] : tree.nodes()) snap.members[id];
    for (auto& [sector, members] : store.active_members()) {
        if (tree.contains(sector)) snap.members[sector] = members;
    }
    return snap;
}

ChangeRatio change_ratio(const CompanyStore& store, const SectorId& sector, const BaselineSnapshot& baseline) {
    ChangeRatio r;
    r.baseline_count = baseline.count(sector);
    const auto& events = store.events();
    for (std::size_t i = baseline.event_watermark; i < events.size(); ++i) {
        if (events[i].sector == sector) ++r.delta;
    }
    if (r.baseline_count == 0) {
        r.new_sector = true;
        return r;
    }
    r.ratio = static_cast<double>(r.delta) / static_cast<double>(r.baseline_count);
    return r;
}

Company company_from_json_line(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
        Company c;
        c.id = CompanyId{j.at("id").get<std::string>()};
        c.legal_name = j.at("legal_name").get<std::string>();
        c.tags = j.value("tags", std::vector<std::string>{});
        c.description = j.value("description", std::string{});
        return c;
    } catch (const nlohmann::json::exception& e) {
        fail("MalformedCompany", e.what());
    }
}

std::string company_to_json_line(const Company& c) {
    nlohmann::ordered_json j;
    j["id"] = c.id.str();
    j["legal_name"] = c.legal_name;
    j["tags"] = c.tags;
    j["description"] = c.description;
    return j.dump();
}

std::vector<Company> load_companies(const std::filesystem::path& path) {
    persistence::SnapshotStore file(path, std::string(kCompaniesSchema), kCompaniesVersion);
    const auto lines = file.read();
    if (!lines) throw Error(ErrorKind::Io, "MissingFile", path.string());
    std::vector<Company> out;
    for (const auto& line : *lines) {
        if (line.empty()) continue;
        out.push_back(company_from_json_line(line));
    }
    return out;
}

void save_companies(const CompanyStore& store, const std::filesystem::path& path) {
    std::vector<std::string> lines;
    lines.reserve(store.size());
    for (const auto& [id, c] : store.companies()) lines.push_back(company_to_json_line(c));
    persistence::SnapshotStore(path, std::string(kCompaniesSchema), kCompaniesVersion).write(lines);
}

std::vector<AnnotationEvent> load_annotation_events(const std::filesystem::path& path) {
    const auto replayed = persistence::AppendLog::replay_file(path);
    std::vector<AnnotationEvent> out;
    out.reserve(replayed.records.size());
    for (const auto& rec : replayed.records) {
        if (rec.fields.size() != 4) fail("MalformedEvent", "seq " + std::to_string(rec.seq));
        out.push_back({parse_timestamp(rec.fields[0]), CompanyId{rec.fields[1]}, SectorId{rec.fields[2]},
                       parse_action(rec.fields[3])});
    }
    return out;
}

void append_annotation_events(const std::filesystem::path& path, std::span<const AnnotationEvent> events) {
    persistence::AppendLog log(path);
    for (const auto& e : events) {
        log.append({format_timestamp(e.at), e.company.str(), e.sector.str(), std::string(to_string(e.action))});
    }
}

CompanyStore load_store(const std::filesystem::path& companies, const std::filesystem::path& annotations) {
    CompanyStore store;
    for (auto& c : load_companies(companies)) store.upsert_company(std::move(c));
    if (std::filesystem::exists(annotations)) {
        for (const auto& e : load_annotation_events(annotations)) store.apply(e);
    }
    return store;
}

}  // namespace sectorinfer::company
