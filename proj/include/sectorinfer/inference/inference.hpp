#pragma once

#include "sectorinfer/common/ids.hpp"
#include "sectorinfer/common/time.hpp"
#include "sectorinfer/company/company_store.hpp"
#include "sectorinfer/framework/sector_tree.hpp"
#include "sectorinfer/genmodel/sector_model.hpp"
#include "sectorinfer/persistence/append_log.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sectorinfer::inference {

struct PredictionRecord {
    CompanyId company_id;
    std::string generated_text;
    /// Absent for novel predictions.
    std::optional<SectorId> matched_sector;
    std::string model_version;
    std::string feature_version;
    Timestamp predicted_at;

    bool operator==(const PredictionRecord&) const = default;
};

/// Tab-separated fields (escaped): company, text, sector or "-", model
/// version, feature version, timestamp.
std::vector<std::string> to_fields(const PredictionRecord& r);
/// Throws Error{Data, "BadPrediction"}.
PredictionRecord from_fields(const std::vector<std::string>& fields);

struct LedgerEntry {
    std::string feature_version;
    std::string model_version;

    bool operator==(const LedgerEntry&) const = default;
};

/// What was last inferred for each company.
class InferenceLedger {
public:
    const LedgerEntry* find(const CompanyId& id) const;
    const std::map<CompanyId, LedgerEntry>& entries() const noexcept { return entries_; }
    void update(std::span<const PredictionRecord> records);

    static InferenceLedger load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    bool operator==(const InferenceLedger&) const = default;

private:
    std::map<CompanyId, LedgerEntry> entries_;
};

/// Companies without a ledger entry, with a changed feature version, or last
/// inferred by another model version. Sorted by id.
std::vector<CompanyId> select_companies(const company::CompanyStore& store, const InferenceLedger& ledger,
                                        const std::string& current_model_version);

/// Node whose normalized name equals the normalized text, if any.
std::optional<SectorId> match_sector(const framework::SectorTree& tree, std::string_view generated_text);

/// One prediction per company, in input order. Companies are split into
/// `threads` contiguous batches that run concurrently; the result does not
/// depend on the split.
std::vector<PredictionRecord> infer_batch(const genmodel::SectorModel& model,
                                          std::span<const company::Company> companies,
                                          const framework::SectorTree& tree, Timestamp at, int threads = 1);

/// Latest prediction per company, stored as one snapshot file.
class PredictionStore {
public:
    explicit PredictionStore(std::filesystem::path path);

    std::map<CompanyId, PredictionRecord> read() const;
    /// Merges `records` (later records win) and atomically rewrites the file.
    void upsert(std::span<const PredictionRecord> records) const;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

struct PublishAck {
    bool store_written = true;
    /// Ids missing from the prediction store (all, if its write failed).
    std::vector<CompanyId> unpersisted_store;
    /// Ids whose event-log append failed.
    std::vector<CompanyId> unpersisted_log;
    std::string error;

    bool complete() const noexcept { return unpersisted_store.empty() && unpersisted_log.empty(); }
};

/// Upserts into the store and appends every record to the event log. Never
/// throws for I/O failures; they are reported in the acknowledgment.
PublishAck publish(std::span<const PredictionRecord> records, const PredictionStore& store,
                   persistence::AppendLog& events);

/// How many companies one inference run selected out of the population.
struct DaySelection {
    Timestamp at;
    std::size_t selected = 0;
    std::size_t population = 0;
};

/// Mean over the window of 1 - selected / population. Throws Error{Data,
/// "EmptyWindow"}.
double load_reduction(std::span<const DaySelection> window);

/// Inference run log: timestamp, selected, population, model version.
std::vector<DaySelection> load_inference_runs(const std::filesystem::path& path);

struct InferenceRun {
    std::vector<PredictionRecord> records;
    DaySelection selection;
    PublishAck ack;
};

struct InferencePaths {
    std::filesystem::path ledger;
    std::filesystem::path predictions;
    std::filesystem::path events;
    std::filesystem::path runs;
};

/// select -> infer -> publish -> ledger update (only for published records)
/// -> run log.
InferenceRun run_inference(const genmodel::SectorModel& model, const company::CompanyStore& store,
                           const framework::SectorTree& tree, const InferencePaths& paths, Timestamp at,
                           int threads = 1);

}  // namespace sectorinfer::inference
