#include "sectorinfer/orchestrator/finetune.hpp"

#include "sectorinfer/augmentation/balance.hpp"
#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/seed.hpp"

#include <algorithm>
#include <random>

namespace sectorinfer::orchestrator {

LabeledDataset prepare_dataset(const attribution::TrainingSet& set, const augmentation::SynonymLexicon& lexicon,
                               const genmodel::Vocabulary& vocab, const genmodel::ModelShape& shape,
                               std::uint64_t seed) {
    if (set.sectors.empty()) throw Error(ErrorKind::Data, "NoEligibleSectors", "no sector meets the threshold");
    const auto balanced = augmentation::balance(set.sectors, lexicon, sub_seed(seed, "balance"));

    LabeledDataset out;
    std::vector<genmodel::Example> all;
    for (std::size_t k = 0; k < balanced.size(); ++k) {
        out.sectors.push_back(balanced[k].sector);
        out.labels.push_back(balanced[k].name);
        for (const auto& s : balanced[k].samples) {
            all.push_back(genmodel::make_example(vocab, shape, s.input_text, s.target_text, static_cast<int>(k)));
        }
    }
    std::mt19937_64 rng(sub_seed(seed, "split"));
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t n_val = std::max<std::size_t>(1, all.size() / 10);
    out.validation.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_val));
    out.train.assign(all.begin() + static_cast<std::ptrdiff_t>(n_val), all.end());
    if (out.train.empty()) out.train = out.validation;
    return out;
}

ValidationReport validate_model(const genmodel::ModelParams& params, genmodel::Paradigm paradigm,
                                const genmodel::Vocabulary& vocab, std::span<const genmodel::Example> examples,
                                const std::vector<std::string>& labels) {
    ValidationReport r{evaluation::ConfusionMatrix(labels), {}};
    for (const auto& ex : examples) {
        const std::string& gold = labels.at(static_cast<std::size_t>(ex.label));
        std::string pred;
        if (genmodel::is_discriminative(paradigm)) {
            pred = labels.at(static_cast<std::size_t>(genmodel::classify(params, ex.input)));
        } else {
            pred = genmodel::normalize_text(
                vocab.decode(genmodel::generate(params, paradigm, ex.input, params.shape.max_output)));
        }
        // Labels are stored as sector names; compare in normalized form.
        std::string column = pred;
        for (const auto& l : labels) {
            if (genmodel::normalize_text(l) == pred) column = l;
        }
        r.matrix.add(gold, column);
    }
    r.metrics = evaluation::metrics(r.matrix);
    return r;
}

genmodel::TrainConfig finetune_schedule(Scenario scenario, const config::RunConfig& config) {
    genmodel::TrainConfig tc = genmodel::paradigm_schedule(config.train);
    if (scenario == Scenario::IncrementalFinetune) {
        tc.total_steps = std::max<std::int64_t>(1, config.train.total_steps / config.incremental_divisor);
        tc.t_prime = 0;
        tc.warmup1 = 0;
        tc.warmup2 = std::min(tc.warmup2, tc.total_steps);
        tc.eval_every = std::min(tc.eval_every, tc.total_steps);
    }
    return tc;
}

FinetuneOutcome run_finetune(Scenario scenario, const FinetuneInputs& inputs, const config::RunConfig& config,
                             ModelRegistry& registry, persistence::AppendLog& alerts, InspectionState& state,
                             Timestamp now) {
    if (scenario == Scenario::SkipFinetune) {
        throw Error(ErrorKind::Config, "NothingToFinetune", "SkipFinetune has no finetune workflow");
    }
    const auto paradigm = config.train.paradigm;
    const auto attributed = attribution::attribute(inputs.tree, inputs.store, config.attribution_threshold);
    const auto set = attribution::build_training_set(attributed, inputs.store, inputs.tree);

    const auto current = registry.current();
    std::optional<genmodel::Checkpoint> previous;
    if (scenario == Scenario::IncrementalFinetune && current) previous = registry.load(*current);

    // The backbone and vocabulary come from the pretrained file for a full
    // finetune and from the released model for an incremental one.
    genmodel::Checkpoint base = previous ? *previous : genmodel::load_checkpoint(config.paths.plm);
    auto data = prepare_dataset(set, inputs.lexicon, base.vocabulary, base.params.shape, config.seed);
    if (previous && (previous->paradigm != paradigm ||
                     (genmodel::is_discriminative(paradigm) && previous->labels != data.labels))) {
        previous.reset();
        base = genmodel::load_checkpoint(config.paths.plm);
    }
    if (!previous) scenario = Scenario::FullFinetune;

    FinetuneOutcome out;
    out.scenario = scenario;
    out.labels = data.labels;
    out.train_size = data.train.size();
    out.validation_size = data.validation.size();

    genmodel::TrainConfig tc = finetune_schedule(scenario, config);
    tc.paradigm = paradigm;
    genmodel::ModelParams init =
        previous ? previous->params
                 : genmodel::initialize_for_training(base.params.plm, base.params.shape, paradigm,
                                                     static_cast<int>(data.labels.size()), sub_seed(config.seed, "init"));
    auto trained = genmodel::train(std::move(init), data.train, data.validation, tc);
    out.history = trained.history;

    const auto report = validate_model(trained.params, paradigm, base.vocabulary, data.validation, data.labels);
    out.metrics = report.metrics;

    genmodel::Checkpoint ckpt;
    ckpt.params = std::move(trained.params);
    ckpt.paradigm = paradigm;
    ckpt.vocabulary = base.vocabulary;
    if (genmodel::is_discriminative(paradigm)) ckpt.labels = data.labels;
    ckpt.metadata = {
        {"scenario", std::string(to_string(scenario))},
        {"trained_at", format_timestamp(now)},
        {"framework_fingerprint", inputs.tree.fingerprint()},
        {"steps_run", std::to_string(out.history.steps_run)},
        {"best_step", std::to_string(out.history.best_step)},
        {"val_accuracy", evaluation::format_value(out.history.best_accuracy)},
        {"train_size", std::to_string(out.train_size)},
        {"validation_size", std::to_string(out.validation_size)},
        {"seed", std::to_string(config.seed)},
        {"parent", previous && current ? *current : std::string("-")},
    };
    const std::string bytes = genmodel::serialize_checkpoint(ckpt);
    out.version = genmodel::checkpoint_version(bytes);

    out.verdict = evaluation::qa_gate(out.metrics, inputs.assertions, alerts, now, out.version);
    if (!out.verdict.pass()) return out;

    registry.release(bytes);
    out.released = true;
    state.baseline = company::snapshot_baseline(inputs.store, inputs.tree, now);
    state.framework_fingerprint = inputs.tree.fingerprint();
    state.current_model_version = out.version;
    if (scenario == Scenario::FullFinetune) state.last_full_finetune_at = now;
    return out;
}

}  // namespace sectorinfer::orchestrator
