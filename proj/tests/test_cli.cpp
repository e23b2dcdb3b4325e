#include "sectorinfer/company/company_store.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

using namespace sectorinfer;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run cli(const sitest::TempDir& dir, const std::string& args) {
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string cmd = std::string("\"") + SECTORINFER_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = persistence::read_file(out);
    r.err = persistence::read_file(err);
    return r;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

// Small model and budgets so a full pipeline runs in seconds.
const char* kTinyConfig = R"({
  "workspace": "ws",
  "seed": 5,
  "model": {"d_model": 16, "heads": 2, "ffn": 24, "encoder_layers": 1, "decoder_layers": 1,
            "prompt_length": 4, "max_input": 40, "max_output": 4},
  "vocab_size": 200,
  "pretrain": {"steps": 30},
  "train": {"total_steps": 240, "t_prime": 40, "warmup1": 10, "warmup2": 20, "eps2": 0.05, "eval_every": 40},
  "attribution": {"threshold": 5},
  "synthetic": {"sectors": 3, "groups": 1, "samples_per_sector": 10}
})";

}  // namespace

TEST_CASE("usage and configuration errors exit 2") {
    sitest::TempDir dir("cli-usage");
    auto r = cli(dir, "frobnicate");
    CHECK(r.code == 2);
    CHECK(r.err.rfind("ERROR ", 0) == 0);
    CHECK(cli(dir, "").code == 2);

    write(dir / "bad.json", R"({"trian": {}})");
    r = cli(dir, "--config " + (dir / "bad.json").string() + " inspect");
    CHECK(r.code == 2);
    CHECK(r.err.rfind("ERROR BadConfig", 0) == 0);
    CHECK(cli(dir, "--config " + (dir / "missing.json").string() + " inspect").code == 2);
}

TEST_CASE("data errors exit 4") {
    sitest::TempDir dir("cli-data");
    write(dir / "framework.tsv", "a\t-\tx\t0\nb\tz\ty\t0\n");
    auto r = cli(dir, "framework validate " + (dir / "framework.tsv").string());
    CHECK(r.code == 4);
    CHECK(r.err.rfind("ERROR OrphanParent", 0) == 0);

    write(dir / "framework.tsv", "a\t-\tx\t0\n");
    r = cli(dir, "--workspace " + dir.path().string() + " infer");
    CHECK(r.code == 4);
    CHECK(r.err.rfind("ERROR MissingFile", 0) == 0);
    company::save_companies(company::CompanyStore{}, dir / "companies.jsonl");
    r = cli(dir, "--workspace " + dir.path().string() + " infer");
    CHECK(r.code == 4);
    CHECK(r.err.find("ERROR NoModel") != std::string::npos);
}

TEST_CASE("framework utilities") {
    sitest::TempDir dir("cli-framework");
    write(dir / "a.tsv", "a\t-\tx\t0\nb\ta\ty\t0\n");
    write(dir / "b.tsv", "a\t-\tx\t0\nb\ta\ty\t0\nc\ta\tz\t1\n");
    auto r = cli(dir, "framework validate " + (dir / "a.tsv").string());
    CHECK(r.code == 0);
    CHECK(r.out.rfind("ok\t2 sectors\tdepth 2", 0) == 0);
    r = cli(dir, "framework diff " + (dir / "a.tsv").string() + " " + (dir / "b.tsv").string());
    CHECK(r.out == "added\tc\n");
    r = cli(dir, "framework show " + (dir / "b.tsv").string());
    CHECK(r.out == "a\tx\n  b\ty\n  c\tz\n");
}

TEST_CASE("attribute on the software subtree fixture") {
    sitest::TempDir dir("cli-attr");
    const auto tree = sitest::small_fixture();
    framework::save_framework(tree, dir / "framework.tsv");
    company::CompanyStore store;
    int next = 0;
    for (const auto& [sector, n] : std::vector<std::pair<std::string, int>>{
             {"s3", 10}, {"s4", 22}, {"s5", 23}, {"s6", 8}, {"s7", 16}}) {
        for (int i = 0; i < n; ++i) {
            const CompanyId id("c" + std::to_string(next++));
            store.upsert_company(sitest::make_company(id.str()));
            store.annotate(id, SectorId(sector), tree, sitest::day(0));
        }
    }
    company::save_companies(store, dir / "companies.jsonl");
    company::append_annotation_events(dir / "annotations.log", store.events());
    const auto r = cli(dir, "--workspace " + dir.path().string() + " attribute");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("eligible\ts4:22\neligible\ts5:23\neligible\ts3:34\n") != std::string::npos);
    CHECK(r.out.find("excluded\t0") != std::string::npos);
    CHECK(cli(dir, "--workspace " + dir.path().string() + " attribute").out == r.out);

    const auto b = cli(dir, "--workspace " + dir.path().string() + " balance");
    CHECK(b.code == 0);
    CHECK(b.out.rfind("zeta\t", 0) == 0);
}

TEST_CASE("scripted pipeline") {
    sitest::TempDir dir("cli-pipeline");
    write(dir / "config.json", kTinyConfig);
    const std::string base = "--config " + (dir / "config.json").string() + " ";
    const auto ws = dir / "ws";

    CHECK(cli(dir, base + "gen-corpus").code == 0);
    auto r = cli(dir, base + "pretrain");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("backbone\t", 0) == 0);

    r = cli(dir, base + "--now 2024-02-01 inspect");
    CHECK(r.out.rfind("FullFinetune\tNoModel", 0) == 0);
    r = cli(dir, base + "--now 2024-02-01 tick");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("released") != std::string::npos);
    CHECK(r.out.find("inferred\t30/30") != std::string::npos);

    r = cli(dir, base + "--now 2024-02-02 tick");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("SkipFinetune", 0) == 0);
    CHECK(r.out.find("inferred\t0/30") != std::string::npos);
    const auto journal = persistence::read_file(ws / "journal.log");
    CHECK(journal.find("SkipFinetune") != std::string::npos);

    r = cli(dir, base + "--now 2024-02-01 tick");
    CHECK(r.code == 2);
    CHECK(r.err.rfind("ERROR NonMonotoneTick", 0) == 0);

    r = cli(dir, base + "--now 2024-02-03 infer");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("inferred\t0/30", 0) == 0);

    r = cli(dir, base + "evaluate");
    CHECK(r.code == 0);
    CHECK(r.out.find("overall") != std::string::npos);

    write(ws / "assertions.tsv", "overall\taccuracy\t>\t1.0\n");
    r = cli(dir, base + "evaluate --gate");
    CHECK(r.code == 3);
    CHECK(r.err.rfind("ERROR QaBlocked", 0) == 0);
    r = cli(dir, base + "--now 2024-02-04 train");
    CHECK(r.code == 3);
    std::filesystem::remove(ws / "assertions.tsv");

    r = cli(dir, base + "report");
    CHECK(r.code == 0);
    CHECK(r.out.find("load_reduction\t") != std::string::npos);
    CHECK(r.out.find("model.scenario\tFullFinetune") != std::string::npos);

    r = cli(dir, base + "--now 2024-02-05 annotate c00001 --remove");
    CHECK(r.code == 0);
    CHECK(r.out == "events\t1\n");
    r = cli(dir, base + "--now 2024-02-05 annotate nobody s3");
    CHECK(r.code == 4);
}
