#pragma once

#include "sectorinfer/common/ids.hpp"
#include "sectorinfer/common/time.hpp"
#include "sectorinfer/company/template.hpp"
#include "sectorinfer/framework/sector_tree.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace sectorinfer::company {

struct Company {
    CompanyId id;
    std::string legal_name;
    std::vector<std::string> tags;
    std::string description;
    /// Hash of (legal_name, tags, description); set by the store.
    std::string feature_version;

    bool operator==(const Company&) const = default;
};

std::string compute_feature_version(const Company& c);

enum class AnnotationAction { Add, Remove };

std::string_view to_string(AnnotationAction a);
AnnotationAction parse_action(std::string_view s);

/// One line of the annotation event log.
struct AnnotationEvent {
    Timestamp at;
    CompanyId company;
    SectorId sector;
    AnnotationAction action = AnnotationAction::Add;

    bool operator==(const AnnotationEvent&) const = default;
};

struct Annotation {
    CompanyId company_id;
    SectorId sector_id;
    Timestamp annotated_at;
    bool active = true;

    bool operator==(const Annotation&) const = default;
};

/// Per-sector active membership captured when a model was trained.
/// `event_watermark` is the number of annotation events that existed at that
/// moment; change ratios count events after it.
struct BaselineSnapshot {
    Timestamp taken_at;
    std::size_t event_watermark = 0;
    std::map<SectorId, std::set<CompanyId>> members;

    std::size_t count(const SectorId& sector) const;
    bool operator==(const BaselineSnapshot&) const = default;
};

/// Result of change_ratio. `new_sector` is set when the sector had no
/// members at baseline, in which case `ratio` is meaningless.
struct ChangeRatio {
    bool new_sector = false;
    double ratio = 0.0;
    std::size_t delta = 0;
    std::size_t baseline_count = 0;
};

/// Companies plus the full history of their sector annotations. Annotation
/// state is event-sourced: every mutation produces AnnotationEvents, and
/// replaying those events into an empty store reproduces the same state.
///
/// Single writer; copy the store to hand a reader an immutable snapshot.
class CompanyStore {
public:
    /// Inserts or replaces; recomputes feature_version. Throws
    /// Error{Data, "EmptyId"}.
    const Company& upsert_company(Company company);

    const Company* find_company(const CompanyId& id) const;
    const std::map<CompanyId, Company>& companies() const noexcept { return companies_; }
    std::size_t size() const noexcept { return companies_.size(); }

    /// Makes `sector` the company's single active annotation. A previous
    /// active annotation to another sector is closed first (one Remove event,
    /// then one Add). Annotating to the current sector emits nothing.
    /// Throws UnknownCompany / UnknownSector.
    std::vector<AnnotationEvent> annotate(const CompanyId& company, const SectorId& sector,
                                          const framework::SectorTree& tree, Timestamp at);

    /// Closes the company's active annotation, if any.
    std::vector<AnnotationEvent> unannotate(const CompanyId& company, Timestamp at);

    /// Deactivates every active annotation pointing at one of `removed`
    /// (sectors dropped from the framework). The annotations are kept in the
    /// history and reported by orphaned().
    std::vector<AnnotationEvent> orphan_sectors(std::span<const SectorId> removed, Timestamp at);

    /// Replay path: applies a logged event without consulting the framework.
    void apply(const AnnotationEvent& event);

    std::optional<Annotation> active_annotation(const CompanyId& company) const;
    const std::vector<Annotation>& history() const noexcept { return history_; }
    const std::vector<AnnotationEvent>& events() const noexcept { return events_; }

    /// Active members per sector (sectors without members are absent).
    std::map<SectorId, std::set<CompanyId>> active_members() const;

    /// Annotations whose sector no longer exists in `tree`.
    std::vector<Annotation> orphaned(const framework::SectorTree& tree) const;

    /// Sample for the company, target filled from its active annotation's
    /// sector name when that sector exists in `tree`.
    FilledSample render(const CompanyId& company, const framework::SectorTree& tree) const;

private:
    void close_active(const CompanyId& company, Timestamp at, std::vector<AnnotationEvent>& out);
    void record(AnnotationEvent event, std::vector<AnnotationEvent>* out);

    std::map<CompanyId, Company> companies_;
    std::vector<Annotation> history_;
    std::map<CompanyId, std::size_t> active_;  // index into history_
    std::vector<AnnotationEvent> events_;
};

/// Fields of the company only; no target.
FilledSample render_template(const Company& company, std::string target = {});

BaselineSnapshot snapshot_baseline(const CompanyStore& store, const framework::SectorTree& tree, Timestamp at);

/// Delta_m / |C_m| where Delta_m counts add and remove events touching the
/// sector since the baseline and |C_m| is its baseline member count.
ChangeRatio change_ratio(const CompanyStore& store, const SectorId& sector, const BaselineSnapshot& baseline);

// --- files ---------------------------------------------------------------

/// Companies file: schema header, then one JSON object per line with keys
/// id, legal_name, tags, description.
std::vector<Company> load_companies(const std::filesystem::path& path);
void save_companies(const CompanyStore& store, const std::filesystem::path& path);
Company company_from_json_line(std::string_view line);
std::string company_to_json_line(const Company& c);

/// Annotation event log: seq, timestamp, company_id, sector_id, add|remove.
std::vector<AnnotationEvent> load_annotation_events(const std::filesystem::path& path);
void append_annotation_events(const std::filesystem::path& path, std::span<const AnnotationEvent> events);

/// Companies file plus replayed annotation log (missing log = no annotations).
CompanyStore load_store(const std::filesystem::path& companies, const std::filesystem::path& annotations);

}  // namespace sectorinfer::company
