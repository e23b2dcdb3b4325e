#include "sectorinfer/common/error.hpp"
#include "sectorinfer/evaluation/metrics.hpp"
#include "sectorinfer/evaluation/qa_gate.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sectorinfer;
using namespace sectorinfer::evaluation;

namespace {

using Strings = std::vector<std::string>;

// Pairs whose precision for "vertical software" is hits / predicted.
std::pair<Strings, Strings> precision_fixture(int hits, int predicted) {
    Strings golds, preds;
    for (int i = 0; i < predicted; ++i) {
        golds.push_back(i < hits ? "vertical software" : "financial service");
        preds.push_back("vertical software");
    }
    for (int i = 0; i < 5; ++i) {
        golds.push_back("financial service");
        preds.push_back("financial service");
    }
    return {golds, preds};
}

QaAssertion vs_precision() { return {"vertical software", Metric::Precision, Comparator::Greater, 0.75}; }

}  // namespace

TEST_CASE("confusion counts") {
    const Strings g{"a", "a", "b"}, p{"a", "b", "b"};
    const auto m = confusion(g, p, {"a", "b"});
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(1, 1) == 1);
    CHECK(m.at(1, 0) == 0);
    CHECK(m.total() == 3);
    const auto s = metrics(m);
    CHECK(*s.find("a")->precision == 1.0);
    CHECK(*s.find("a")->recall == 0.5);
    CHECK(*s.find("b")->precision == 0.5);
    CHECK(*s.find("b")->recall == 1.0);
    CHECK(*s.accuracy == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("novel predictions and undefined values") {
    const Strings g{"a", "a"}, p{"a", "blockchain"};
    const auto m = confusion(g, p, {"a", "b", "c"});
    CHECK(m.at(0, m.novel_column()) == 1);
    const auto s = metrics(m);
    CHECK(s.novel == 1);
    CHECK(*s.accuracy == 0.5);
    CHECK_FALSE(s.find("c")->precision.has_value());
    CHECK_FALSE(s.find("c")->recall.has_value());
    CHECK(format_metrics(s).find("c\tundefined\tundefined\t0") != std::string::npos);
    CHECK(*s.mean_precision == 1.0);
    CHECK(*s.mean_recall == 0.5);
    CHECK_FALSE(metrics(ConfusionMatrix({"a"})).accuracy.has_value());
}

TEST_CASE("diagonal matrix scores 1") {
    const Strings g{"a", "b", "c", "a"};
    const auto s = metrics(confusion(g, g, {"a", "b", "c"}));
    for (const auto& sc : s.sectors) {
        CHECK(*sc.precision == 1.0);
        CHECK(*sc.recall == 1.0);
    }
    CHECK(*s.accuracy == 1.0);
}

TEST_CASE("confusion errors") {
    CHECK_THROWS_AS(confusion(Strings{"a"}, Strings{}, {"a"}), Error);
    CHECK_THROWS_AS(confusion(Strings{"z"}, Strings{"a"}, {"a"}), Error);
    CHECK_THROWS_AS(ConfusionMatrix({"a", "a"}), Error);
}

TEST_CASE("random evaluations match a pair-counting oracle and ignore order") {
    const Strings sectors{"a", "b", "c", "d"};
    std::mt19937_64 rng(21);
    for (int round = 0; round < 500; ++round) {
        const std::size_t n = rng() % 60;
        Strings g(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = sectors[rng() % 4];
            p[i] = rng() % 6 == 0 ? "novel thing" : sectors[rng() % 4];
        }
        const auto s = metrics(confusion(g, p, sectors));
        std::size_t correct = 0;
        for (std::size_t i = 0; i < n; ++i) correct += g[i] == p[i];
        if (n == 0) {
            CHECK_FALSE(s.accuracy.has_value());
        } else {
            CHECK(*s.accuracy == static_cast<double>(correct) / static_cast<double>(n));
        }
        for (const auto& name : sectors) {
            std::size_t tp = 0, predicted = 0, actual = 0;
            for (std::size_t i = 0; i < n; ++i) {
                tp += g[i] == name && p[i] == name;
                predicted += p[i] == name;
                actual += g[i] == name;
            }
            const auto* sc = s.find(name);
            CHECK(sc->support == actual);
            if (predicted == 0) {
                CHECK_FALSE(sc->precision.has_value());
            } else {
                CHECK(*sc->precision == static_cast<double>(tp) / static_cast<double>(predicted));
                CHECK(*sc->precision >= 0.0);
                CHECK(*sc->precision <= 1.0);
            }
            if (actual == 0) {
                CHECK_FALSE(sc->recall.has_value());
            } else {
                CHECK(*sc->recall == static_cast<double>(tp) / static_cast<double>(actual));
            }
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        Strings g2, p2;
        for (const auto i : perm) {
            g2.push_back(g[i]);
            p2.push_back(p[i]);
        }
        CHECK(format_metrics(metrics(confusion(g2, p2, sectors))) == format_metrics(s));
    }
}

TEST_CASE("assertion parsing") {
    const auto a = parse_assertions(
        "# release gate\n"
        "vertical software\tprecision\t>\t0.75\n"
        "\n"
        "overall\taccuracy\t>=\t0.5\n"
        "health care\trecall\t≥\t0.6\n");
    REQUIRE(a.size() == 3);
    CHECK(a[0] == vs_precision());
    CHECK(a[1].metric == Metric::Accuracy);
    CHECK(a[1].comparator == Comparator::GreaterEqual);
    CHECK(a[2].comparator == Comparator::GreaterEqual);
    for (const char* bad : {"x\tprecision\t>\n", "x\tprecision\t<\t0.5\n", "x\tprecision\t>\t1.5\n",
                            "x\tf1\t>\t0.5\n", "x\taccuracy\t>\t0.5\n", "x\tprecision\t>\tabc\n"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_assertions(bad), Error);
    }
    try {
        parse_assertions("ok\tprecision\t>\t0.5\nbroken\n");
        FAIL("accepted a broken line");
    } catch (const Error& e) {
        CHECK(e.code() == "BadAssertion");
        CHECK(e.detail().find("line 2") != std::string::npos);
    }
}

TEST_CASE("gate passes at 0.80 and blocks at 0.70 with one alert") {
    sitest::TempDir dir("qa");
    persistence::AppendLog alerts(dir / "alerts.log");
    const std::vector<QaAssertion> assertions{vs_precision()};

    auto [g1, p1] = precision_fixture(4, 5);
    const auto pass = metrics(confusion(g1, p1, {"vertical software", "financial service"}));
    CHECK(*pass.find("vertical software")->precision == 0.8);
    CHECK(qa_gate(pass, assertions, alerts, sitest::day(0), "v1").pass());
    CHECK(alerts.replay().records.empty());

    auto [g2, p2] = precision_fixture(7, 10);
    const auto fail = metrics(confusion(g2, p2, {"vertical software", "financial service"}));
    CHECK(*fail.find("vertical software")->precision == 0.7);
    const auto verdict = qa_gate(fail, assertions, alerts, sitest::day(1), "v2");
    REQUIRE(verdict.violations.size() == 1);
    CHECK(*verdict.violations[0].observed == 0.7);
    const auto records = alerts.replay().records;
    REQUIRE(records.size() == 1);
    CHECK(records[0].fields[1] == "v2");
    CHECK(records[0].fields[2].find("vertical software") != std::string::npos);
}

TEST_CASE("fail-closed on unknown sectors and undefined metrics; vacuous pass") {
    const auto m = metrics(confusion(Strings{"a"}, Strings{"a"}, {"a", "b"}));
    CHECK(evaluate_assertions(m, {}).pass());
    CHECK_FALSE(evaluate_assertions(m, std::vector<QaAssertion>{{"zz", Metric::Precision, Comparator::Greater, 0.0}}).pass());
    CHECK_FALSE(evaluate_assertions(m, std::vector<QaAssertion>{{"b", Metric::Precision, Comparator::GreaterEqual, 0.0}}).pass());
    CHECK(evaluate_assertions(m, std::vector<QaAssertion>{{"a", Metric::Recall, Comparator::GreaterEqual, 1.0}}).pass());
    CHECK_FALSE(evaluate_assertions(m, std::vector<QaAssertion>{{"a", Metric::Recall, Comparator::Greater, 1.0}}).pass());
    CHECK(*observed_value(m, {"overall", Metric::Accuracy, Comparator::Greater, 0.0}) == 1.0);
}
