#include "sectorinfer/inference/inference.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/genmodel/vocabulary.hpp"
#include "sectorinfer/persistence/record.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <algorithm>
#include <thread>

namespace sectorinfer::inference {

namespace {

constexpr std::string_view kNoSector = "-";

}  // namespace

std::vector<std::string> to_fields(const PredictionRecord& r) {
    return {r.company_id.str(),
            r.generated_text,
            r.matched_sector ? r.matched_sector->str() : std::string(kNoSector),
            r.model_version,
            r.feature_version,
            format_timestamp(r.predicted_at)};
}

PredictionRecord from_fields(const std::vector<std::string>& f) {
    if (f.size() != 6 || f[0].empty()) throw Error(ErrorKind::Data, "BadPrediction", "expected 6 fields");
    PredictionRecord r;
    r.company_id = CompanyId(f[0]);
    r.generated_text = f[1];
    if (f[2] != kNoSector) r.matched_sector = SectorId(f[2]);
    r.model_version = f[3];
    r.feature_version = f[4];
    r.predicted_at = parse_timestamp(f[5]);
    return r;
}

const LedgerEntry* InferenceLedger::find(const CompanyId& id) const {
    const auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
}

void InferenceLedger::update(std::span<const PredictionRecord> records) {
    for (const auto& r : records) entries_[r.company_id] = {r.feature_version, r.model_version};
}

InferenceLedger InferenceLedger::load(const std::filesystem::path& path) {
    InferenceLedger ledger;
    const auto lines = persistence::SnapshotStore(path, "inference-ledger", 1).read();
    if (!lines) return ledger;
    for (const auto& line : *lines) {
        const auto f = persistence::split_record(line);
        if (f.size() != 3 || f[0].empty()) throw Error(ErrorKind::Data, "BadLedger", line);
        ledger.entries_[CompanyId(f[0])] = {f[1], f[2]};
    }
    return ledger;
}

void InferenceLedger::save(const std::filesystem::path& path) const {
    std::vector<std::string> lines;
    for (const auto& [id, e] : entries_) lines.push_back(persistence::join_record({id.str(), e.feature_version, e.model_version}));
    persistence::SnapshotStore(path, "inference-ledger", 1).write(lines);
}

std::vector<CompanyId> select_companies(const company::CompanyStore& store, const InferenceLedger& ledger,
                                        const std::string& current_model_version) {
    std::vector<CompanyId> out;
    for (const auto& [id, c] : store.companies()) {
        const auto* e = ledger.find(id);
        if (!e || e->feature_version != c.feature_version || e->model_version != current_model_version) {
            out.push_back(id);
        }
    }
    return out;
}

std::optional<SectorId> match_sector(const framework::SectorTree& tree, std::string_view generated_text) {
    const std::string wanted = genmodel::normalize_text(generated_text);
    if (wanted.empty()) return std::nullopt;
    for (const auto& [id, node] : tree.nodes()) {
        if (genmodel::normalize_text(node.name) == wanted) return id;
    }
    return std::nullopt;
}

std::vector<PredictionRecord> infer_batch(const genmodel::SectorModel& model,
                                          std::span<const company::Company> companies,
                                          const framework::SectorTree& tree, Timestamp at, int threads) {
    std::vector<PredictionRecord> out(companies.size());
    const auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& c = companies[i];
            const auto sample = company::render_template(c);
            std::string text = model.predict(sample.input_text);
            auto matched = match_sector(tree, text);
            out[i] = {c.id, std::move(text), std::move(matched), model.version(), c.feature_version, at};
        }
    };
    const std::size_t n = companies.size();
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        run(0, n);
        return out;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w * chunk < n; ++w) {
            pool.emplace_back([&, w] {
                try {
                    run(w * chunk, std::min(n, (w + 1) * chunk));
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

PredictionStore::PredictionStore(std::filesystem::path path) : path_(std::move(path)) {}

std::map<CompanyId, PredictionRecord> PredictionStore::read() const {
    std::map<CompanyId, PredictionRecord> out;
    const auto lines = persistence::SnapshotStore(path_, "predictions", 1).read();
    if (!lines) return out;
    for (const auto& line : *lines) {
        auto r = from_fields(persistence::split_record(line));
        out.insert_or_assign(r.company_id, std::move(r));
    }
    return out;
}

void PredictionStore::upsert(std::span<const PredictionRecord> records) const {
    auto all = read();
    for (const auto& r : records) all.insert_or_assign(r.company_id, r);
    std::vector<std::string> lines;
    lines.reserve(all.size());
    for (const auto& [id, r] : all) lines.push_back(persistence::join_record(to_fields(r)));
    persistence::SnapshotStore(path_, "predictions", 1).write(lines);
}

PublishAck publish(std::span<const PredictionRecord> records, const PredictionStore& store,
                   persistence::AppendLog& events) {
    PublishAck ack;
    if (records.empty()) return ack;
    try {
        store.upsert(records);
    } catch (const std::exception& e) {
        ack.store_written = false;
        ack.error = e.what();
        for (const auto& r : records) ack.unpersisted_store.push_back(r.company_id);
    }
    for (const auto& r : records) {
        try {
            events.append(to_fields(r));
        } catch (const std::exception& e) {
            if (ack.error.empty()) ack.error = e.what();
            ack.unpersisted_log.push_back(r.company_id);
        }
    }
    return ack;
}

double load_reduction(std::span<const DaySelection> window) {
    if (window.empty()) throw Error(ErrorKind::Data, "EmptyWindow", "no inference runs in window");
    double sum = 0.0;
    for (const auto& d : window) {
        if (d.population == 0) continue;
        sum += 1.0 - static_cast<double>(d.selected) / static_cast<double>(d.population);
    }
    return sum / static_cast<double>(window.size());
}

std::vector<DaySelection> load_inference_runs(const std::filesystem::path& path) {
    std::vector<DaySelection> out;
    if (!std::filesystem::exists(path)) return out;
    for (const auto& rec : persistence::AppendLog::replay_file(path).records) {
        if (rec.fields.size() != 4) throw Error(ErrorKind::Data, "BadRunLog", "expected 4 fields");
        out.push_back({parse_timestamp(rec.fields[0]), std::stoul(rec.fields[1]), std::stoul(rec.fields[2])});
    }
    return out;
}

InferenceRun run_inference(const genmodel::SectorModel& model, const company::CompanyStore& store,
                           const framework::SectorTree& tree, const InferencePaths& paths, Timestamp at,
                           int threads) {
    auto ledger = InferenceLedger::load(paths.ledger);
    const auto selected = select_companies(store, ledger, model.version());
    std::vector<company::Company> companies;
    companies.reserve(selected.size());
    for (const auto& id : selected) companies.push_back(*store.find_company(id));

    InferenceRun run;
    run.records = infer_batch(model, companies, tree, at, threads);
    PredictionStore predictions(paths.predictions);
    persistence::AppendLog events(paths.events);
    run.ack = publish(run.records, predictions, events);

    // A record missing from the store is retried on the next run.
    std::vector<PredictionRecord> persisted;
    for (const auto& r : run.records) {
        if (std::find(run.ack.unpersisted_store.begin(), run.ack.unpersisted_store.end(), r.company_id) ==
            run.ack.unpersisted_store.end()) {
            persisted.push_back(r);
        }
    }
    ledger.update(persisted);
    ledger.save(paths.ledger);

    run.selection = {at, selected.size(), store.size()};
    persistence::AppendLog(paths.runs)
        .append({format_timestamp(at), std::to_string(run.selection.selected), std::to_string(run.selection.population),
                 model.version()});
    return run;
}

}  // namespace sectorinfer::inference
