#include "sectorinfer/config/run_config.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/seed.hpp"
#include "sectorinfer/genmodel/vocabulary.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <nlohmann/json.hpp>

#include <set>

#ifndef SECTORINFER_DATA_DIR
#define SECTORINFER_DATA_DIR "data"
#endif

namespace sectorinfer::config {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorKind::Config, "BadConfig", why); }

/// Rejects keys outside `allowed` so that typos do not silently fall back to
/// defaults.
void check_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) bad(std::string(where) + " must be an object");
    const std::set<std::string_view> ok(allowed);
    for (const auto& [k, v] : j.items()) {
        if (!ok.count(k)) bad("unknown key '" + k + "' in " + std::string(where));
    }
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        bad(std::string("bad value for '") + key + "'");
    }
}

void read_path(const json& j, const char* key, std::filesystem::path& out, const std::filesystem::path& root) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) bad(std::string("path '") + key + "' must be a string");
    const std::filesystem::path p(j.at(key).get<std::string>());
    out = p.is_absolute() ? p : root / p;
}

}  // namespace

void RunConfig::validate() const {
    train.validate();
    pretrain.validate();
    synthetic.validate();
    if (threads < 1) bad("threads must be >= 1");
    if (attribution_threshold == 0) bad("attribution threshold must be >= 1");
    if (!(inspection.marginal > 0.0 && inspection.marginal < inspection.significant)) {
        bad("need 0 < marginal < significant");
    }
    if (inspection.force_days < 1) bad("force_days must be >= 1");
    // Incremental finetunes must stay within 1/7 of a full finetune's steps.
    if (incremental_divisor < 7) bad("incremental_divisor must be >= 7");
    if (vocab_size < static_cast<std::size_t>(genmodel::Vocabulary::kNumSpecials) + 1 || vocab_size > 4096) {
        bad("vocab_size out of range");
    }
    if (model.d_model < 2 || model.heads < 1 || model.d_model % model.heads != 0) bad("bad model shape");
}

RunConfig default_config(const std::filesystem::path& workspace) {
    RunConfig c;
    c.workspace = workspace;
    auto& p = c.paths;
    p.framework = workspace / "framework.tsv";
    p.companies = workspace / "companies.jsonl";
    p.annotations = workspace / "annotations.log";
    p.lexicon = std::filesystem::path(SECTORINFER_DATA_DIR) / "lexicon.tsv";
    p.assertions = workspace / "assertions.tsv";
    p.plm = workspace / "plm.ckpt";
    p.registry = workspace / "registry";
    p.state = workspace / "state.json";
    p.journal = workspace / "journal.log";
    p.alerts = workspace / "alerts.log";
    p.predictions = workspace / "predictions.tsv";
    p.prediction_events = workspace / "prediction_events.log";
    p.ledger = workspace / "ledger.tsv";
    p.inference_runs = workspace / "inference_runs.log";
    p.lock = workspace / "tick.lock";
    apply_seed(c, c.seed);
    return c;
}

void apply_seed(RunConfig& config, std::uint64_t seed) {
    config.seed = seed;
    config.train.seed = sub_seed(seed, "train");
    config.pretrain.seed = sub_seed(seed, "pretrain");
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad(e.what());
    }
    check_keys(j, "config", {"workspace", "seed", "threads", "paths", "attribution", "inspection", "model",
                             "vocab_size", "pretrain", "train", "incremental", "synthetic"});
    std::string ws = ".";
    read(j, "workspace", ws);
    std::filesystem::path workspace(ws);
    if (!workspace.is_absolute()) workspace = base_dir / workspace;
    workspace = workspace.lexically_normal();
    RunConfig c = default_config(workspace);

    read(j, "threads", c.threads);
    read(j, "vocab_size", c.vocab_size);
    if (j.contains("paths")) {
        const auto& p = j.at("paths");
        check_keys(p, "paths", {"framework", "companies", "annotations", "lexicon", "assertions", "plm", "registry",
                                "state", "journal", "alerts", "predictions", "prediction_events", "ledger",
                                "inference_runs", "lock"});
        auto& o = c.paths;
        read_path(p, "framework", o.framework, workspace);
        read_path(p, "companies", o.companies, workspace);
        read_path(p, "annotations", o.annotations, workspace);
        read_path(p, "lexicon", o.lexicon, workspace);
        read_path(p, "assertions", o.assertions, workspace);
        read_path(p, "plm", o.plm, workspace);
        read_path(p, "registry", o.registry, workspace);
        read_path(p, "state", o.state, workspace);
        read_path(p, "journal", o.journal, workspace);
        read_path(p, "alerts", o.alerts, workspace);
        read_path(p, "predictions", o.predictions, workspace);
        read_path(p, "prediction_events", o.prediction_events, workspace);
        read_path(p, "ledger", o.ledger, workspace);
        read_path(p, "inference_runs", o.inference_runs, workspace);
        read_path(p, "lock", o.lock, workspace);
    }
    if (j.contains("attribution")) {
        check_keys(j.at("attribution"), "attribution", {"threshold"});
        read(j.at("attribution"), "threshold", c.attribution_threshold);
    }
    if (j.contains("inspection")) {
        const auto& s = j.at("inspection");
        check_keys(s, "inspection", {"significant", "marginal", "force_days"});
        read(s, "significant", c.inspection.significant);
        read(s, "marginal", c.inspection.marginal);
        read(s, "force_days", c.inspection.force_days);
    }
    if (j.contains("model")) {
        const auto& m = j.at("model");
        check_keys(m, "model", {"d_model", "heads", "ffn", "encoder_layers", "decoder_layers", "prompt_length",
                                "max_input", "max_output"});
        read(m, "d_model", c.model.d_model);
        read(m, "heads", c.model.heads);
        read(m, "ffn", c.model.ffn);
        read(m, "encoder_layers", c.model.encoder_layers);
        read(m, "decoder_layers", c.model.decoder_layers);
        read(m, "prompt_length", c.model.prompt_length);
        read(m, "max_input", c.model.max_input);
        read(m, "max_output", c.model.max_output);
    }
    if (j.contains("pretrain")) {
        const auto& s = j.at("pretrain");
        check_keys(s, "pretrain", {"steps", "batch_size", "lr", "warmup", "noise_density", "mean_span"});
        read(s, "steps", c.pretrain.steps);
        read(s, "batch_size", c.pretrain.batch_size);
        read(s, "lr", c.pretrain.lr);
        read(s, "warmup", c.pretrain.warmup);
        read(s, "noise_density", c.pretrain.noise_density);
        read(s, "mean_span", c.pretrain.mean_span);
    }
    if (j.contains("train")) {
        const auto& s = j.at("train");
        check_keys(s, "train", {"total_steps", "t_prime", "eps1", "eps2", "warmup1", "warmup2", "batch_size",
                                "paradigm", "patience", "eval_every", "clip_norm"});
        read(s, "total_steps", c.train.total_steps);
        read(s, "t_prime", c.train.t_prime);
        read(s, "eps1", c.train.eps1);
        read(s, "eps2", c.train.eps2);
        read(s, "warmup1", c.train.warmup1);
        read(s, "warmup2", c.train.warmup2);
        read(s, "batch_size", c.train.batch_size);
        std::string paradigm(genmodel::to_string(c.train.paradigm));
        read(s, "paradigm", paradigm);
        try {
            c.train.paradigm = genmodel::parse_paradigm(paradigm);
        } catch (const Error& e) {
            bad("unknown paradigm '" + paradigm + "'");
        }
        read(s, "patience", c.train.patience);
        read(s, "eval_every", c.train.eval_every);
        read(s, "clip_norm", c.train.clip_norm);
    }
    if (j.contains("incremental")) {
        check_keys(j.at("incremental"), "incremental", {"budget_divisor"});
        read(j.at("incremental"), "budget_divisor", c.incremental_divisor);
    }
    if (j.contains("synthetic")) {
        const auto& s = j.at("synthetic");
        check_keys(s, "synthetic", {"sectors", "groups", "samples_per_sector", "keywords_per_sector",
                                    "tags_per_company", "description_keywords", "noise"});
        read(s, "sectors", c.synthetic.sectors);
        read(s, "groups", c.synthetic.groups);
        read(s, "samples_per_sector", c.synthetic.samples_per_sector);
        read(s, "keywords_per_sector", c.synthetic.keywords_per_sector);
        read(s, "tags_per_company", c.synthetic.tags_per_company);
        read(s, "description_keywords", c.synthetic.description_keywords);
        read(s, "noise", c.synthetic.noise);
    }
    std::uint64_t seed = c.seed;
    read(j, "seed", seed);
    apply_seed(c, seed);
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = persistence::read_file(path);
    } catch (const Error& e) {
        bad("cannot read " + path.string());
    }
    return parse_config(text, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

std::string dump_config(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["workspace"] = c.workspace.string();
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    const auto& p = c.paths;
    j["paths"] = {{"framework", p.framework.string()},
                  {"companies", p.companies.string()},
                  {"annotations", p.annotations.string()},
                  {"lexicon", p.lexicon.string()},
                  {"assertions", p.assertions.string()},
                  {"plm", p.plm.string()},
                  {"registry", p.registry.string()},
                  {"state", p.state.string()},
                  {"journal", p.journal.string()},
                  {"alerts", p.alerts.string()},
                  {"predictions", p.predictions.string()},
                  {"prediction_events", p.prediction_events.string()},
                  {"ledger", p.ledger.string()},
                  {"inference_runs", p.inference_runs.string()},
                  {"lock", p.lock.string()}};
    j["attribution"] = {{"threshold", c.attribution_threshold}};
    j["inspection"] = {{"significant", c.inspection.significant},
                       {"marginal", c.inspection.marginal},
                       {"force_days", c.inspection.force_days}};
    const auto& m = c.model;
    j["model"] = {{"d_model", m.d_model},       {"heads", m.heads},
                  {"ffn", m.ffn},               {"encoder_layers", m.encoder_layers},
                  {"decoder_layers", m.decoder_layers}, {"prompt_length", m.prompt_length},
                  {"max_input", m.max_input},   {"max_output", m.max_output}};
    j["vocab_size"] = c.vocab_size;
    const auto& pt = c.pretrain;
    j["pretrain"] = {{"steps", pt.steps}, {"batch_size", pt.batch_size}, {"lr", pt.lr},
                     {"warmup", pt.warmup}, {"noise_density", pt.noise_density}, {"mean_span", pt.mean_span}};
    const auto& t = c.train;
    j["train"] = {{"total_steps", t.total_steps}, {"t_prime", t.t_prime},     {"eps1", t.eps1},
                  {"eps2", t.eps2},               {"warmup1", t.warmup1},     {"warmup2", t.warmup2},
                  {"batch_size", t.batch_size},   {"paradigm", std::string(genmodel::to_string(t.paradigm))},
                  {"patience", t.patience},       {"eval_every", t.eval_every}, {"clip_norm", t.clip_norm}};
    j["incremental"] = {{"budget_divisor", c.incremental_divisor}};
    const auto& s = c.synthetic;
    j["synthetic"] = {{"sectors", s.sectors},
                      {"groups", s.groups},
                      {"samples_per_sector", s.samples_per_sector},
                      {"keywords_per_sector", s.keywords_per_sector},
                      {"tags_per_company", s.tags_per_company},
                      {"description_keywords", s.description_keywords},
                      {"noise", s.noise}};
    return j.dump(2) + "\n";
}

}  // namespace sectorinfer::config
