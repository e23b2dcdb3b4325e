#include "sectorinfer/orchestrator/tick.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

namespace sectorinfer::orchestrator {

std::vector<JournalEntry> load_journal(const std::filesystem::path& path) {
    std::vector<JournalEntry> out;
    if (!std::filesystem::exists(path)) return out;
    for (const auto& r : persistence::AppendLog::replay_file(path).records) {
        if (r.fields.size() != 5) throw Error(ErrorKind::Data, "BadJournal", "record " + std::to_string(r.seq));
        out.push_back({parse_timestamp(r.fields[0]), r.fields[1], r.fields[2], r.fields[3], r.fields[4]});
    }
    return out;
}

std::vector<evaluation::QaAssertion> load_assertions_or_empty(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return {};
    return evaluation::load_assertions(path);
}

TickOutcome tick(const config::RunConfig& config, Timestamp now) {
    const auto& p = config.paths;
    std::filesystem::create_directories(p.lock.parent_path());
    persistence::FileLock lock(p.lock);

    const auto journal = load_journal(p.journal);
    if (!journal.empty() && now < journal.back().at) {
        throw Error(ErrorKind::Config, "NonMonotoneTick",
                    format_timestamp(now) + " is before the last tick " + format_timestamp(journal.back().at));
    }

    const auto tree = framework::load_framework(p.framework);
    const auto store = company::load_store(p.companies, p.annotations);
    auto state = load_state(p.state);
    ModelRegistry registry(p.registry);

    TickOutcome out;
    out.at = now;
    out.decision = inspect(state, store, tree, now, config.inspection);
    out.outcome = "skipped";
    if (out.decision.scenario != Scenario::SkipFinetune) {
        const auto lexicon = augmentation::SynonymLexicon::load(p.lexicon);
        const auto assertions = load_assertions_or_empty(p.assertions);
        persistence::AppendLog alerts(p.alerts);
        FinetuneInputs inputs{tree, store, lexicon, assertions};
        out.finetune = run_finetune(out.decision.scenario, inputs, config, registry, alerts, state, now);
        if (out.finetune->released) {
            save_state(state, p.state);
            out.outcome = "released";
        } else {
            out.outcome = "qa-blocked";
        }
    }
    const auto current = registry.current();
    out.model_version = current.value_or("");

    persistence::AppendLog journal_log(p.journal);
    journal_log.append({format_timestamp(now), std::string(to_string(out.decision.scenario)),
                        out.decision.reasons_text(), out.outcome, current.value_or("-")});

    if (current) {
        genmodel::SectorModel model(registry.load(*current), *current);
        out.inference = inference::run_inference(model, store, tree,
                                                 {p.ledger, p.predictions, p.prediction_events, p.inference_runs},
                                                 now, config.threads);
    }
    return out;
}

}  // namespace sectorinfer::orchestrator
