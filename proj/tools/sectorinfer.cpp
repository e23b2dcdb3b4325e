// Command-line entry point.
#include "sectorinfer/attribution/attribution.hpp"
#include "sectorinfer/augmentation/balance.hpp"
#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/seed.hpp"
#include "sectorinfer/config/run_config.hpp"
#include "sectorinfer/evaluation/qa_gate.hpp"
#include "sectorinfer/orchestrator/pipeline.hpp"
#include "sectorinfer/orchestrator/tick.hpp"
#include "sectorinfer/synth/corpus.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <set>
#include <string>

namespace si = sectorinfer;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitQa = 3;
constexpr int kExitData = 4;

struct Globals {
    std::string config_path;
    std::string workspace = ".";
    std::optional<std::uint64_t> seed;
    std::string now;
    int threads = 0;
};

si::config::RunConfig load(const Globals& g) {
    auto c = g.config_path.empty() ? si::config::default_config(g.workspace) : si::config::load_config(g.config_path);
    if (g.seed) si::config::apply_seed(c, *g.seed);
    if (g.threads > 0) c.threads = g.threads;
    c.validate();
    return c;
}

si::Timestamp now_of(const Globals& g) { return g.now.empty() ? si::now_utc() : si::parse_timestamp(g.now); }

int exit_code(si::ErrorKind k) {
    switch (k) {
        case si::ErrorKind::Config: return kExitConfig;
        case si::ErrorKind::Qa: return kExitQa;
        default: return kExitData;
    }
}

void print_metrics(const si::evaluation::SectorMetrics& m) { std::cout << si::evaluation::format_metrics(m); }

std::string selection_text(const si::inference::InferenceRun& run) {
    return std::to_string(run.selection.selected) + "/" + std::to_string(run.selection.population);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sectorinfer: hierarchical sector inference pipeline"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "Run configuration (JSON)")->check(CLI::ExistingFile);
    app.add_option("--workspace", g.workspace, "Workspace directory when no config file is given");
    app.add_option("--seed", g.seed, "Override the configured seed");
    app.add_option("--now", g.now, "Logical time (YYYY-MM-DD or YYYY-MM-DDTHH:MM:SSZ)");
    app.add_option("--threads", g.threads, "Inference threads");

    auto* gen = app.add_subcommand("gen-corpus", "Write a seeded synthetic framework, companies file and annotation log");
    int sectors = 0, samples = 0;
    std::optional<double> noise;
    gen->add_option("--sectors", sectors, "Leaf sectors");
    gen->add_option("--samples", samples, "Companies per sector");
    gen->add_option("--noise", noise, "Off-sector keyword probability");

    auto* pre = app.add_subcommand("pretrain", "Build the vocabulary and pretrain the backbone");

    auto* fw = app.add_subcommand("framework", "Framework file utilities");
    fw->require_subcommand(1);
    std::string fw_file, fw_before, fw_after;
    auto* fw_validate = fw->add_subcommand("validate", "Validate a framework file");
    fw_validate->add_option("file", fw_file)->required();
    auto* fw_diff = fw->add_subcommand("diff", "Compare two framework files");
    fw_diff->add_option("before", fw_before)->required();
    fw_diff->add_option("after", fw_after)->required();
    auto* fw_show = fw->add_subcommand("show", "Print the framework tree");
    fw_show->add_option("file", fw_file);

    auto* ingest = app.add_subcommand("ingest", "Upsert companies from a companies file");
    std::string ingest_file;
    ingest->add_option("file", ingest_file)->required()->check(CLI::ExistingFile);

    auto* annotate = app.add_subcommand("annotate", "Annotate a company with a sector");
    std::string ann_company, ann_sector;
    bool ann_remove = false;
    annotate->add_option("company", ann_company)->required();
    annotate->add_option("sector", ann_sector);
    annotate->add_flag("--remove", ann_remove, "Close the company's active annotation");

    auto* attribute = app.add_subcommand("attribute", "Print the annotation attribution report");
    auto* balance = app.add_subcommand("balance", "Print the sample balancing plan");
    auto* train = app.add_subcommand("train", "Run a full finetune (QA gated)");
    std::string paradigm;
    train->add_option("--paradigm", paradigm, "prompting|prompt-tuning|model-tuning|prompt-model-tuning|m-way");
    auto* inspect = app.add_subcommand("inspect", "Print today's scenario decision");
    auto* tick = app.add_subcommand("tick", "Inspect, finetune if needed, then run incremental inference");
    auto* infer = app.add_subcommand("infer", "Run incremental inference with the current model");
    auto* evaluate = app.add_subcommand("evaluate", "Score stored predictions against annotations");
    bool gate = false;
    evaluate->add_flag("--gate", gate, "Apply the QA assertions; exit 3 on failure");
    auto* report = app.add_subcommand("report", "Current model, load reduction and novel predictions");
    std::size_t window = 30;
    report->add_option("--window", window, "Inference runs in the load-reduction window");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "ERROR Usage " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (*fw) {
            if (*fw_validate) {
                const auto tree = si::framework::load_framework(fw_file);
                std::cout << "ok\t" << tree.size() << " sectors\tdepth " << tree.max_depth() << "\t"
                          << tree.fingerprint() << "\n";
            } else if (*fw_diff) {
                const auto d = si::framework::diff_frameworks(si::framework::load_framework(fw_before),
                                                              si::framework::load_framework(fw_after));
                for (const auto& id : d.added) std::cout << "added\t" << id << "\n";
                for (const auto& id : d.removed) std::cout << "removed\t" << id << "\n";
                for (const auto& id : d.modified) std::cout << "modified\t" << id << "\n";
                if (d.layer_added) std::cout << "layer_added\n";
                if (d.empty()) std::cout << "unchanged\n";
            } else {
                const auto path = fw_file.empty() ? load(g).paths.framework : fs::path(fw_file);
                const auto tree = si::framework::load_framework(path);
                for (const auto& id : si::framework::depth_first_index(tree)) {
                    const auto& n = tree.node(id);
                    std::cout << std::string(2 * static_cast<std::size_t>(n.depth - 1), ' ') << n.id << "\t" << n.name
                              << "\n";
                }
            }
            return 0;
        }

        auto config = load(g);
        const auto& p = config.paths;
        fs::create_directories(config.workspace);

        if (*gen) {
            auto spec = config.synthetic;
            if (sectors > 0) spec.sectors = sectors;
            if (samples > 0) spec.samples_per_sector = samples;
            if (noise) spec.noise = *noise;
            const auto corpus = si::synth::gen_corpus(spec, si::sub_seed(config.seed, "corpus"), now_of(g));
            si::synth::write_corpus(corpus, {p.framework, p.companies, p.annotations});
            std::cout << "sectors\t" << spec.sectors << "\ncompanies\t" << corpus.companies.size() << "\n";
            return 0;
        }

        if (*ingest) {
            si::company::CompanyStore store;
            if (fs::exists(p.companies)) {
                for (auto& c : si::company::load_companies(p.companies)) store.upsert_company(std::move(c));
            }
            std::size_t changed = 0;
            for (auto& c : si::company::load_companies(ingest_file)) {
                const auto* old = store.find_company(c.id);
                const auto& now = store.upsert_company(std::move(c));
                if (!old || old->feature_version != now.feature_version) ++changed;
            }
            si::company::save_companies(store, p.companies);
            std::cout << "companies\t" << store.size() << "\nchanged\t" << changed << "\n";
            return 0;
        }

        const auto tree = si::framework::load_framework(p.framework);
        auto store = si::company::load_store(p.companies, p.annotations);

        if (*annotate) {
            const si::CompanyId company(ann_company);
            std::vector<si::company::AnnotationEvent> events;
            if (ann_remove) {
                events = store.unannotate(company, now_of(g));
            } else {
                if (ann_sector.empty()) throw si::Error(si::ErrorKind::Config, "MissingSector", "annotate needs a sector");
                events = store.annotate(company, si::SectorId(ann_sector), tree, now_of(g));
            }
            si::company::append_annotation_events(p.annotations, events);
            std::cout << "events\t" << events.size() << "\n";
            return 0;
        }

        if (*pre) {
            const auto ckpt = si::orchestrator::pretrain_backbone(store, tree, config);
            const auto version = si::genmodel::save_checkpoint(ckpt, p.plm);
            std::cout << "backbone\t" << version << "\nvocabulary\t" << ckpt.vocabulary.size() << "\nfinal_loss\t"
                      << ckpt.metadata.at("final_loss") << "\n";
            return 0;
        }

        if (*attribute) {
            const auto r = si::attribution::attribute(tree, store, config.attribution_threshold);
            std::cout << si::attribution::format_report(r, tree);
            for (const auto& e : r.eligible) std::cout << "eligible\t" << e.sector << ":" << e.companies.size() << "\n";
            std::cout << "excluded\t" << r.excluded.size() << "\n";
            return 0;
        }

        if (*balance) {
            const auto r = si::attribution::attribute(tree, store, config.attribution_threshold);
            const auto set = si::attribution::build_training_set(r, store, tree);
            if (set.sectors.empty()) {
                throw si::Error(si::ErrorKind::Data, "NoEligibleSectors", "no sector meets the threshold");
            }
            const auto plan = si::augmentation::plan_balance(set.sectors);
            std::cout << "zeta\t" << plan.zeta << "\n";
            for (const auto& e : plan.sectors) {
                std::cout << e.sector << "\t" << e.original << "\t" << e.copies_per_sample << "\t" << e.balanced << "\n";
            }
            return 0;
        }

        if (*inspect) {
            const auto state = si::orchestrator::load_state(p.state);
            const auto d = si::orchestrator::inspect(state, store, tree, now_of(g), config.inspection);
            std::cout << to_string(d.scenario) << "\t" << d.reasons_text() << "\n";
            return 0;
        }

        if (*train) {
            if (!paradigm.empty()) config.train.paradigm = si::genmodel::parse_paradigm(paradigm);
            const auto lexicon = si::augmentation::SynonymLexicon::load(p.lexicon);
            const auto assertions = si::orchestrator::load_assertions_or_empty(p.assertions);
            si::persistence::AppendLog alerts(p.alerts);
            si::orchestrator::ModelRegistry registry(p.registry);
            auto state = si::orchestrator::load_state(p.state);
            const auto out = si::orchestrator::run_finetune(si::orchestrator::Scenario::FullFinetune,
                                                            {tree, store, lexicon, assertions}, config, registry,
                                                            alerts, state, now_of(g));
            print_metrics(out.metrics);
            std::cout << "version\t" << out.version << "\nsteps\t" << out.history.steps_run << "\n";
            if (!out.released) {
                std::cerr << "ERROR QaBlocked " << out.verdict.summary() << "\n";
                return kExitQa;
            }
            si::orchestrator::save_state(state, p.state);
            std::cout << "released\t" << out.version << "\n";
            return 0;
        }

        if (*tick) {
            const auto out = si::orchestrator::tick(config, now_of(g));
            std::cout << to_string(out.decision.scenario) << "\t" << out.decision.reasons_text() << "\t" << out.outcome
                      << "\t" << (out.model_version.empty() ? "-" : out.model_version) << "\n";
            if (out.inference) std::cout << "inferred\t" << selection_text(*out.inference) << "\n";
            if (out.outcome == "qa-blocked") {
                std::cerr << "ERROR QaBlocked " << out.finetune->verdict.summary() << "\n";
                return kExitQa;
            }
            if (out.inference && !out.inference->ack.complete()) {
                std::cerr << "ERROR PartialPublish " << out.inference->ack.error << "\n";
                return kExitData;
            }
            return 0;
        }

        if (*infer) {
            si::orchestrator::ModelRegistry registry(p.registry);
            const auto current = registry.current();
            if (!current) throw si::Error(si::ErrorKind::Data, "NoModel", "no released model in " + p.registry.string());
            si::genmodel::SectorModel model(registry.load(*current), *current);
            const auto run = si::inference::run_inference(
                model, store, tree, {p.ledger, p.predictions, p.prediction_events, p.inference_runs}, now_of(g),
                config.threads);
            std::cout << "inferred\t" << selection_text(run) << "\nmodel\t" << *current << "\n";
            if (!run.ack.complete()) {
                std::cerr << "ERROR PartialPublish " << run.ack.error << "\n";
                return kExitData;
            }
            return 0;
        }

        if (*evaluate) {
            const auto preds = si::inference::PredictionStore(p.predictions).read();
            const auto r = si::orchestrator::evaluate_predictions(store, tree, preds, config.attribution_threshold);
            print_metrics(r.metrics);
            if (gate) {
                const auto assertions = si::orchestrator::load_assertions_or_empty(p.assertions);
                const auto verdict = si::evaluation::evaluate_assertions(r.metrics, assertions);
                if (!verdict.pass()) {
                    std::cerr << "ERROR QaBlocked " << verdict.summary() << "\n";
                    return kExitQa;
                }
            }
            return 0;
        }

        if (*report) {
            si::orchestrator::ModelRegistry registry(p.registry);
            const auto current = registry.current();
            std::cout << "model\t" << current.value_or("-") << "\n";
            if (current) {
                for (const auto& [k, v] : registry.load(*current).metadata) std::cout << "model." << k << "\t" << v << "\n";
            }
            if (fs::exists(p.inference_runs)) {
                auto runs = si::inference::load_inference_runs(p.inference_runs);
                if (runs.size() > window) runs.erase(runs.begin(), runs.end() - static_cast<std::ptrdiff_t>(window));
                if (!runs.empty()) {
                    std::cout << "load_reduction\t" << si::evaluation::format_value(si::inference::load_reduction(runs))
                              << "\t" << runs.size() << " runs\n";
                }
            }
            std::set<std::string> novel;
            std::size_t novel_count = 0;
            for (const auto& [id, rec] : si::inference::PredictionStore(p.predictions).read()) {
                if (rec.matched_sector) continue;
                ++novel_count;
                novel.insert(rec.generated_text);
            }
            std::cout << "novel_predictions\t" << novel_count << "\n";
            for (const auto& t : novel) std::cout << "novel\t" << t << "\n";
            return 0;
        }
    } catch (const si::Error& e) {
        std::cerr << "ERROR " << e.code() << " " << e.detail() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "ERROR Internal " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
