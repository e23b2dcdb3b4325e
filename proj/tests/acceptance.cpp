// Acceptance checks. `acceptance --criterion N` runs one criterion, no
// argument runs all of them. Each prints one PASS/FAIL line; the exit status
// is non-zero when any criterion fails.
#include "attribution_oracle.hpp"
#include "sectorinfer/augmentation/balance.hpp"
#include "sectorinfer/common/seed.hpp"
#include "sectorinfer/evaluation/qa_gate.hpp"
#include "sectorinfer/genmodel/checkpoint.hpp"
#include "sectorinfer/genmodel/gradient_check.hpp"
#include "sectorinfer/genmodel/sector_model.hpp"
#include "sectorinfer/genmodel/trainer.hpp"
#include "sectorinfer/inference/inference.hpp"
#include "sectorinfer/orchestrator/finetune.hpp"
#include "sectorinfer/orchestrator/pipeline.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"
#include "support.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

using namespace sectorinfer;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kFixtureSeconds = 1.0;
constexpr double kOracleSeconds = 30.0;
constexpr double kBalanceSeconds = 5.0;
constexpr double kGradientTolerance = 1e-4;
constexpr double kGradientStep = 1e-5;
constexpr double kGradientSeconds = 60.0;
constexpr double kFreezeSeconds = 60.0;
constexpr double kLearnabilityAccuracy = 0.90;
constexpr double kLearnabilitySeconds = 300.0;
constexpr double kParadigmMargin = 0.02;
constexpr int kParadigmSeeds = 5;
constexpr double kLoadReduction = 0.95;
constexpr double kLoadSeconds = 10.0;
constexpr double kDeterminismSeconds = 600.0;

struct Verdict {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

// 1 ------------------------------------------------------------------------

Verdict attribution_fixture() {
    Stopwatch clock;
    const auto tree = sitest::small_fixture();
    const auto store = sitest::annotated(tree, {{SectorId("s3"), 10}, {SectorId("s4"), 22}, {SectorId("s5"), 23},
                                                {SectorId("s6"), 8}, {SectorId("s7"), 16}});
    const auto r = attribution::attribute(tree, store, 20);
    std::string got;
    for (const auto& e : r.eligible) got += (got.empty() ? "" : ",") + e.sector.str() + ":" + std::to_string(e.companies.size());
    const double t = clock.seconds();
    const bool ok = got == "s4:22,s5:23,s3:34" && r.excluded.empty() && t < kFixtureSeconds;
    return {ok, "eligible {" + got + "} expected {s4:22,s5:23,s3:34}, " + fmt(t) + " s"};
}

// 2 ------------------------------------------------------------------------

Verdict attribution_oracle() {
    Stopwatch clock;
    std::mt19937_64 rng(2);
    int agree = 0;
    int partition = 0;
    const int rounds = 1000;
    for (int round = 0; round < rounds; ++round) {
        const auto tree = sitest::random_tree(rng, 50, 4);
        const auto nodes = framework::depth_first_index(tree);
        company::CompanyStore store;
        const int n = static_cast<int>(rng() % 501);
        for (int i = 0; i < n; ++i) {
            const CompanyId id("c" + std::to_string(i));
            store.upsert_company(sitest::make_company(id.str()));
            store.annotate(id, nodes[rng() % nodes.size()], tree, sitest::day(0));
        }
        const std::size_t threshold = 1 + rng() % 30;
        const auto r = attribution::attribute(tree, store, threshold);
        std::set<CompanyId> excluded;
        agree += sitest::as_map(r) == sitest::oracle(tree, store, threshold, excluded) && r.excluded == excluded;

        std::set<CompanyId> seen;
        std::size_t total = 0;
        bool ok = true;
        for (const auto& e : r.eligible) {
            ok = ok && e.companies.size() >= threshold;
            total += e.companies.size();
            seen.insert(e.companies.begin(), e.companies.end());
        }
        for (const auto& c : r.excluded) ok = ok && seen.count(c) == 0;
        partition += ok && seen.size() == total && seen.size() + r.excluded.size() == static_cast<std::size_t>(n);
    }
    const double t = clock.seconds();
    return {agree == rounds && partition == rounds && t < kOracleSeconds,
            std::to_string(agree) + "/" + std::to_string(rounds) + " agree with oracle, " + std::to_string(partition) +
                "/" + std::to_string(rounds) + " partitions, " + fmt(t) + " s"};
}

// 3 ------------------------------------------------------------------------

Verdict balancing_bounds() {
    Stopwatch clock;
    const auto lexicon = augmentation::SynonymLexicon::load(fs::path(SECTORINFER_DATA_DIR) / "lexicon.tsv");
    std::mt19937_64 rng(3);
    const auto sample = company::make_sample({"acme bank", {"payments", "lending"}, "an online payments platform"});
    int checked = 0;
    int bad = 0;
    for (int round = 0; round < 200; ++round) {
        std::vector<std::size_t> counts(1 + rng() % 8);
        for (auto& c : counts) c = 1 + rng() % 25;
        std::vector<attribution::SectorSamples> sectors;
        for (std::size_t m = 0; m < counts.size(); ++m) {
            sectors.push_back({SectorId("s" + std::to_string(m)), "sector " + std::to_string(m), {}});
            sectors.back().samples.assign(counts[m], sample);
        }
        const auto out = augmentation::balance(sectors, lexicon, rng());
        const std::size_t max = *std::max_element(counts.begin(), counts.end());
        const std::size_t zeta = 2 * max;
        for (std::size_t m = 0; m < counts.size(); ++m) {
            const std::size_t got = out[m].samples.size();
            ++checked;
            const bool ok = got <= zeta && got + counts[m] > zeta && (counts[m] != max || got == zeta);
            bad += !ok;
        }
    }
    const double t = clock.seconds();
    return {bad == 0 && t < kBalanceSeconds,
            std::to_string(checked - bad) + "/" + std::to_string(checked) + " sectors within (zeta-|C|, zeta], " +
                fmt(t) + " s"};
}

// 4 ------------------------------------------------------------------------

genmodel::Vocabulary reference_vocabulary() {
    return genmodel::Vocabulary::build(
        {"klarna bank ab , concerns buy-now-pay-later and shopping , is an online payments platform . sector : "
         "financial service vertical software gaming developer tools"},
        512);
}

Verdict gradient_correctness() {
    Stopwatch clock;
    const auto vocab = reference_vocabulary();
    genmodel::ModelShape shape;  // reference architecture
    shape.vocab = static_cast<int>(vocab.size());
    const auto ex = genmodel::make_example(vocab, shape, "Klarna Bank AB, concerns buy-now-pay-later and shopping. Sector:",
                                           "financial service");
    const auto paradigm = genmodel::Paradigm::PromptPlusModelTuning;
    auto params = genmodel::initialize_for_training(genmodel::init_plm(shape, 4), shape, paradigm, 0, 5);
    const auto r = genmodel::gradient_check(params, paradigm, ex, kGradientStep, 200, 6);
    const double t = clock.seconds();
    const double worst = r.max_relative_error();
    const bool ok = worst < kGradientTolerance && r.plm.coordinates > 0 && r.head.coordinates > 0 &&
                    r.prompt.coordinates > 0 && t < kGradientSeconds;
    return {ok, "max rel err theta1 " + fmt(r.plm.max_relative_error, 3) + ", theta2 " +
                    fmt(r.head.max_relative_error, 3) + ", theta3 " + fmt(r.prompt.max_relative_error, 3) +
                    " (< 1e-4, h=1e-5, d=" + std::to_string(shape.d_model) + "), " + fmt(t) + " s"};
}

// 5 ------------------------------------------------------------------------

std::vector<genmodel::Example> reference_examples(const genmodel::Vocabulary& vocab, const genmodel::ModelShape& shape) {
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"Klarna Bank AB, concerns buy-now-pay-later and shopping. Sector:", "financial service"},
        {"Acme, concerns shopping, is an online platform. Sector:", "vertical software"},
        {"Bank AB, concerns payments. Sector:", "financial service"},
        {"Tools AB, is a developer platform. Sector:", "developer tools"}};
    std::vector<genmodel::Example> out;
    for (const auto& [in, target] : pairs) out.push_back(genmodel::make_example(vocab, shape, in, target));
    return out;
}

Verdict freezing_schedule() {
    Stopwatch clock;
    const auto vocab = reference_vocabulary();
    genmodel::ModelShape shape;
    shape.vocab = static_cast<int>(vocab.size());
    const auto data = reference_examples(vocab, shape);

    std::string detail;
    bool ok = true;
    for (const auto p : {genmodel::Paradigm::PromptPlusModelTuning, genmodel::Paradigm::Prompting,
                         genmodel::Paradigm::PromptTuning}) {
        genmodel::TrainConfig c;
        c.paradigm = p;
        c.total_steps = 100;
        c.t_prime = 50;
        c.warmup1 = 10;
        c.warmup2 = 10;
        c.batch_size = 2;
        c.eval_every = 1000;
        c.patience = 1000;
        c = genmodel::paradigm_schedule(c);
        const auto init = genmodel::initialize_for_training(genmodel::init_plm(shape, 7), shape, p, 0, 8);
        const auto h0 = genmodel::hash_group(init.plm);
        std::int64_t last_unchanged = 0;
        std::int64_t first_changed = 0;
        genmodel::train(init, data, data, c, [&](std::int64_t step, const genmodel::ModelParams& params) {
            if (genmodel::hash_group(params.plm) == h0) {
                if (first_changed == 0) last_unchanged = step;
            } else if (first_changed == 0) {
                first_changed = step;
            }
        });
        if (p == genmodel::Paradigm::PromptPlusModelTuning) {
            ok = ok && last_unchanged == 50 && first_changed == 51;
            detail += "P+M theta1 unchanged to step " + std::to_string(last_unchanged) + ", changed at " +
                      std::to_string(first_changed);
        } else {
            ok = ok && first_changed == 0 && last_unchanged == 100;
            detail += std::string("; ") + std::string(genmodel::to_string(p)) + " theta1 unchanged for " +
                      std::to_string(last_unchanged) + " steps";
        }
    }
    const double t = clock.seconds();
    return {ok && t < kFreezeSeconds, detail + ", " + fmt(t) + " s"};
}

// 6 ------------------------------------------------------------------------

Verdict schedule_values() {
    const genmodel::TrainConfig c;  // T=3000, t'=300, warmup 100 / 150
    bool ok = genmodel::lr_at(c.warmup1 / 2, c) == c.eps1 / 2;
    for (std::int64_t s = c.warmup1; s <= c.t_prime; ++s) ok = ok && genmodel::lr_at(s, c) == c.eps1;
    ok = ok && genmodel::lr_at(c.t_prime + c.warmup2 / 2, c) == c.eps2 / 2;
    ok = ok && genmodel::lr_at(c.t_prime + c.warmup2, c) == c.eps2;
    ok = ok && genmodel::lr_at(c.total_steps, c) == c.eps2;
    return {ok, "lr(" + std::to_string(c.warmup1 / 2) + ")=" + fmt(genmodel::lr_at(c.warmup1 / 2, c)) + ", plateau " +
                    fmt(c.eps1) + " on [" + std::to_string(c.warmup1) + "," + std::to_string(c.t_prime) + "], lr(" +
                    std::to_string(c.t_prime + c.warmup2 / 2) + ")=" +
                    fmt(genmodel::lr_at(c.t_prime + c.warmup2 / 2, c))};
}

// 7, 8 -----------------------------------------------------------------------

// The 8 x 40 corpus at noise 0.1 with a pretrained backbone, under `dir`.
struct DeskCorpus {
    config::RunConfig config;
    framework::SectorTree tree;
    company::CompanyStore store;
    augmentation::SynonymLexicon lexicon;
    double pretrain_seconds = 0.0;

    explicit DeskCorpus(const fs::path& dir) : config(config::default_config(dir)) {
        config.synthetic.sectors = 8;
        config.synthetic.samples_per_sector = 40;
        config.synthetic.noise = 0.1;
        const auto corpus = synth::gen_corpus(config.synthetic, sub_seed(config.seed, "corpus"), sitest::day(0));
        synth::write_corpus(corpus, {config.paths.framework, config.paths.companies, config.paths.annotations});
        tree = corpus.tree;
        store = company::load_store(config.paths.companies, config.paths.annotations);
        lexicon = augmentation::SynonymLexicon::load(config.paths.lexicon);
        Stopwatch clock;
        genmodel::save_checkpoint(orchestrator::pretrain_backbone(store, tree, config), config.paths.plm);
        pretrain_seconds = clock.seconds();
    }

    orchestrator::FinetuneOutcome finetune(const config::RunConfig& c) const {
        fs::remove_all(c.paths.registry);
        orchestrator::ModelRegistry registry(c.paths.registry);
        persistence::AppendLog alerts(c.paths.alerts);
        orchestrator::InspectionState state;
        return orchestrator::run_finetune(orchestrator::Scenario::FullFinetune, {tree, store, lexicon, {}}, c, registry,
                                          alerts, state, sitest::day(1));
    }
};

// Accuracy on companies from a differently seeded corpus of the same shape;
// none of them occur in training.
double fresh_accuracy(const DeskCorpus& desk, const std::string& version) {
    const orchestrator::ModelRegistry registry(desk.config.paths.registry);
    const genmodel::SectorModel model(registry.load(version), version);
    const auto fresh = synth::gen_corpus(desk.config.synthetic, 9999, sitest::day(0));
    std::size_t hits = 0;
    for (const auto& c : fresh.companies) {
        hits += model.predict(company::render_template(c).input_text) == fresh.tree.node(fresh.truth.at(c.id)).name;
    }
    return static_cast<double>(hits) / static_cast<double>(fresh.companies.size());
}

Verdict desk_learnability() {
    sitest::TempDir dir("accept-learn");
    const DeskCorpus desk(dir.path());
    Stopwatch clock;
    const auto out = desk.finetune(desk.config);
    const double t = clock.seconds();
    const double acc = out.history.best_accuracy;
    const double fresh = fresh_accuracy(desk, out.version);
    const bool ok = acc >= kLearnabilityAccuracy && out.history.steps_run <= 3000 && t < kLearnabilitySeconds;
    return {ok, "val acc " + fmt(acc) + " (>= 0.90) at step " + std::to_string(out.history.best_step) + ", " +
                    std::to_string(out.history.steps_run) + " steps run, finetune " + fmt(t) + " s (< 300), pretrain " +
                    fmt(desk.pretrain_seconds) + " s, unseen-corpus acc " + fmt(fresh)};
}

Verdict paradigm_ordering() {
    sitest::TempDir dir("accept-paradigms");
    const DeskCorpus desk(dir.path());
    const std::vector<genmodel::Paradigm> paradigms{genmodel::Paradigm::PromptPlusModelTuning,
                                                   genmodel::Paradigm::Prompting, genmodel::Paradigm::PromptTuning};
    std::map<genmodel::Paradigm, double> mean;
    std::cout << "paradigm report (" << kParadigmSeeds << " seeds, validation accuracy)\n";
    for (const auto p : paradigms) {
        std::cout << "  " << genmodel::to_string(p) << ":";
        for (int s = 0; s < kParadigmSeeds; ++s) {
            auto c = desk.config;
            config::apply_seed(c, 100 + static_cast<std::uint64_t>(s));
            c.train.paradigm = p;
            const double acc = desk.finetune(c).history.best_accuracy;
            mean[p] += acc / kParadigmSeeds;
            std::cout << " " << fmt(acc) << std::flush;
        }
        std::cout << "  mean " << fmt(mean[p]) << "\n";
    }
    const double pm = mean[genmodel::Paradigm::PromptPlusModelTuning];
    const double best_prompt =
        std::max(mean[genmodel::Paradigm::Prompting], mean[genmodel::Paradigm::PromptTuning]);
    const bool ok = pm >= best_prompt - kParadigmMargin;
    return {ok, "prompt+model " + fmt(pm) + " vs max(prompting, prompt tuning) " + fmt(best_prompt) +
                    " - 0.02" + (ok ? "" : "  [margin FAILED]")};
}

// 9 ------------------------------------------------------------------------

Verdict decision_table() {
    const auto tree = sitest::small_fixture();
    const SectorId sector("s4");
    company::CompanyStore base;
    for (int i = 0; i < 100; ++i) {
        const CompanyId id("b" + std::to_string(i));
        base.upsert_company(sitest::make_company(id.str()));
        base.annotate(id, sector, tree, sitest::day(0));
    }
    orchestrator::InspectionState unchanged;
    unchanged.baseline = company::snapshot_baseline(base, tree, sitest::day(0));
    unchanged.framework_fingerprint = tree.fingerprint();
    unchanged.current_model_version = "v0";
    unchanged.last_full_finetune_at = sitest::day(0);

    // Expected outcome written out from the rules, independent of inspect().
    const auto expected = [](double ratio, bool framework_changed, int days) {
        if (framework_changed || ratio >= 0.75) return orchestrator::Scenario::FullFinetune;
        if (ratio >= 0.1) return days >= 90 ? orchestrator::Scenario::FullFinetune
                                            : orchestrator::Scenario::IncrementalFinetune;
        return orchestrator::Scenario::SkipFinetune;
    };
    int cases = 0;
    int matches = 0;
    std::string mismatches;
    for (const int delta : {5, 10, 30, 74, 75, 90}) {
        auto store = base;
        for (int i = 0; i < delta; ++i) {
            const CompanyId id("n" + std::to_string(i));
            store.upsert_company(sitest::make_company(id.str()));
            store.annotate(id, sector, tree, sitest::day(1));
        }
        for (const bool changed : {false, true}) {
            auto state = unchanged;
            if (changed) state.framework_fingerprint = "stale";
            for (const int days : {45, 91}) {
                ++cases;
                const auto got = orchestrator::inspect(state, store, tree, sitest::day(days), {}).scenario;
                if (got == expected(delta / 100.0, changed, days)) {
                    ++matches;
                } else {
                    mismatches += " ratio=" + fmt(delta / 100.0) + (changed ? ",changed" : ",unchanged") + "," +
                                  std::to_string(days) + "d->" + std::string(orchestrator::to_string(got));
                }
            }
        }
    }
    return {matches == cases, std::to_string(matches) + "/" + std::to_string(cases) + " cases match" + mismatches};
}

// 10 -----------------------------------------------------------------------

Verdict inference_load() {
    Stopwatch clock;
    const int n = 1000;
    company::CompanyStore store;
    for (int i = 0; i < n; ++i) store.upsert_company(sitest::make_company("c" + std::to_string(i)));
    inference::InferenceLedger ledger;
    const auto mark = [&](const std::vector<CompanyId>& ids) {
        std::vector<inference::PredictionRecord> recs;
        for (const auto& id : ids) {
            recs.push_back({id, "x", std::nullopt, "v1", store.find_company(id)->feature_version, sitest::day(0)});
        }
        ledger.update(recs);
    };
    mark(inference::select_companies(store, ledger, "v1"));
    std::mt19937_64 rng(10);
    std::vector<inference::DaySelection> window;
    for (int d = 1; d <= 30; ++d) {
        std::vector<CompanyId> ids;
        for (const auto& [id, c] : store.companies()) ids.push_back(id);
        std::shuffle(ids.begin(), ids.end(), rng);
        for (int k = 0; k < n * 3 / 100; ++k) {
            auto c = *store.find_company(ids[static_cast<std::size_t>(k)]);
            c.description += " revised on day " + std::to_string(d);
            store.upsert_company(c);
        }
        const auto selected = inference::select_companies(store, ledger, "v1");
        window.push_back({sitest::day(d), selected.size(), store.size()});
        mark(selected);
    }
    const double r = inference::load_reduction(window);
    const double t = clock.seconds();
    return {r >= kLoadReduction && t < kLoadSeconds,
            "mean load reduction " + fmt(r, 6) + " over 30 days (>= 0.95), " + fmt(t) + " s"};
}

// 11 -----------------------------------------------------------------------

Verdict qa_gate_behavior() {
    sitest::TempDir dir("accept-qa");
    persistence::AppendLog alerts(dir / "alerts.log");
    const std::vector<evaluation::QaAssertion> assertions{
        {"vertical software", evaluation::Metric::Precision, evaluation::Comparator::Greater, 0.75}};
    const auto observed = [](int hits, int predicted) {
        std::vector<std::string> golds, preds;
        for (int i = 0; i < predicted; ++i) {
            golds.push_back(i < hits ? "vertical software" : "gaming");
            preds.push_back("vertical software");
        }
        return evaluation::metrics(evaluation::confusion(golds, preds, {"vertical software", "gaming"}));
    };
    const auto high = observed(4, 5);
    const auto low = observed(7, 10);
    const bool pass_high = evaluation::qa_gate(high, assertions, alerts, sitest::day(1), "v1").pass();
    const std::size_t after_high = alerts.replay().records.size();
    const bool pass_low = evaluation::qa_gate(low, assertions, alerts, sitest::day(2), "v2").pass();
    const std::size_t after_low = alerts.replay().records.size();
    const bool ok = *high.find("vertical software")->precision == 0.8 &&
                    *low.find("vertical software")->precision == 0.7 && pass_high && !pass_low && after_high == 0 &&
                    after_low == 1;
    return {ok, std::string("precision 0.80 -> ") + (pass_high ? "pass" : "block") + ", 0.70 -> " +
                    (pass_low ? "pass" : "block") + ", alerts " + std::to_string(after_low)};
}

// 12 -----------------------------------------------------------------------

int run_cli(const std::string& args, const fs::path& out) {
    const std::string cmd = std::string("\"") + SECTORINFER_CLI + "\" " + args + " >\"" + out.string() + "\" 2>&1";
    return std::system(cmd.c_str());
}

struct PipelineResult {
    bool ok = true;
    std::string version;
    std::string predictions;
    std::string failure;
};

PipelineResult scripted_pipeline(const fs::path& ws) {
    PipelineResult r;
    const std::string base = "--workspace \"" + ws.string() + "\" --seed 42 --now 2024-03-01 ";
    for (const char* step : {"gen-corpus --noise 0.1", "pretrain", "tick", "infer", "evaluate"}) {
        if (run_cli(base + step, ws.parent_path() / (ws.filename().string() + ".out")) != 0) {
            r.ok = false;
            r.failure = step;
            return r;
        }
    }
    const auto current = orchestrator::ModelRegistry(ws / "registry").current();
    r.version = current.value_or("");
    r.predictions = persistence::read_file(ws / "predictions.tsv");
    return r;
}

Verdict end_to_end_determinism() {
    sitest::TempDir dir("accept-e2e");
    Stopwatch clock;
    const auto a = scripted_pipeline(dir / "run-a");
    const auto b = scripted_pipeline(dir / "run-b");
    const double t = clock.seconds();
    if (!a.ok || !b.ok) return {false, "pipeline step failed: " + (a.ok ? b.failure : a.failure)};
    const bool ok = !a.version.empty() && a.version == b.version && a.predictions == b.predictions &&
                    !a.predictions.empty() && t < kDeterminismSeconds;
    return {ok, "versions " + a.version + " / " + b.version + ", prediction stores " +
                    (a.predictions == b.predictions ? "identical" : "differ") + " (" +
                    std::to_string(a.predictions.size()) + " bytes), " + fmt(t) + " s (< 600)"};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria{
    {"attribution fixture", attribution_fixture},
    {"attribution oracle equivalence", attribution_oracle},
    {"balancing bounds", balancing_bounds},
    {"gradient correctness", gradient_correctness},
    {"freezing schedule", freezing_schedule},
    {"schedule values", schedule_values},
    {"desk-scale learnability", desk_learnability},
    {"paradigm ordering", paradigm_ordering},
    {"decision table", decision_table},
    {"incremental inference load", inference_load},
    {"QA gate behavior", qa_gate_behavior},
    {"end-to-end determinism", end_to_end_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-12)")->check(CLI::Range(1, 12));
    CLI11_PARSE(app, argc, argv);

    bool all_pass = true;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        if (only != 0 && only != n) continue;
        Verdict v;
        try {
            v = kCriteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        all_pass = all_pass && v.pass;
        std::cout << "criterion " << n << " " << (v.pass ? "PASS" : "FAIL") << " " << kCriteria[i].first << ": "
                  << v.detail << std::endl;
    }
    return all_pass ? 0 : 1;
}
