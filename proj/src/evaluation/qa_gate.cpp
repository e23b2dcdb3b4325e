#include "sectorinfer/evaluation/qa_gate.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/text.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <charconv>

namespace sectorinfer::evaluation {

namespace {

std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::Precision: return "precision";
        case Metric::Recall: return "recall";
        case Metric::Accuracy: return "accuracy";
    }
    return "?";
}

}  // namespace

std::string QaAssertion::describe() const {
    return sector + " " + std::string(metric_name(metric)) + (comparator == Comparator::Greater ? " > " : " >= ") +
           format_value(threshold);
}

std::vector<QaAssertion> parse_assertions(std::string_view document) {
    std::vector<QaAssertion> out;
    std::size_t line_no = 0;
    for (const auto& raw : text::split(document, '\n')) {
        ++line_no;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fail = [&](const std::string& why) {
            throw Error(ErrorKind::Config, "BadAssertion", "line " + std::to_string(line_no) + ": " + why);
        };
        const auto f = text::split(line, '\t');
        if (f.size() != 4) fail("expected 4 tab-separated fields");
        QaAssertion a;
        a.sector = std::string(text::trim(f[0]));
        if (a.sector.empty()) fail("empty sector");
        const auto metric = text::trim(f[1]);
        if (metric == "precision") {
            a.metric = Metric::Precision;
        } else if (metric == "recall") {
            a.metric = Metric::Recall;
        } else if (metric == "accuracy") {
            a.metric = Metric::Accuracy;
        } else {
            fail("unknown metric '" + std::string(metric) + "'");
        }
        if (a.metric == Metric::Accuracy && a.sector != kOverall) fail("accuracy is only defined for 'overall'");
        const auto cmp = text::trim(f[2]);
        if (cmp == ">") {
            a.comparator = Comparator::Greater;
        } else if (cmp == ">=" || cmp == "≥") {
            a.comparator = Comparator::GreaterEqual;
        } else {
            fail("unknown comparator '" + std::string(cmp) + "'");
        }
        const auto th = text::trim(f[3]);
        const auto res = std::from_chars(th.data(), th.data() + th.size(), a.threshold);
        if (res.ec != std::errc() || res.ptr != th.data() + th.size()) fail("bad threshold");
        if (!(a.threshold >= 0.0 && a.threshold <= 1.0)) fail("threshold must be in [0, 1]");
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<QaAssertion> load_assertions(const std::filesystem::path& path) {
    return parse_assertions(persistence::read_file(path));
}

std::string QaVerdict::summary() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.assertion.describe() + " observed " + format_value(v.observed);
        if (!v.reason.empty()) out += " (" + v.reason + ")";
    }
    return out;
}

std::optional<double> observed_value(const SectorMetrics& m, const QaAssertion& a) {
    if (a.sector == kOverall) {
        switch (a.metric) {
            case Metric::Precision: return m.mean_precision;
            case Metric::Recall: return m.mean_recall;
            case Metric::Accuracy: return m.accuracy;
        }
    }
    const auto* s = m.find(a.sector);
    if (!s) return std::nullopt;
    switch (a.metric) {
        case Metric::Precision: return s->precision;
        case Metric::Recall: return s->recall;
        case Metric::Accuracy: return std::nullopt;
    }
    return std::nullopt;
}

QaVerdict evaluate_assertions(const SectorMetrics& m, std::span<const QaAssertion> assertions) {
    QaVerdict verdict;
    for (const auto& a : assertions) {
        const auto v = observed_value(m, a);
        if (!v) {
            const bool known = a.sector == kOverall || m.find(a.sector) != nullptr;
            verdict.violations.push_back({a, v, known ? "undefined" : "unknown sector"});
            continue;
        }
        const bool holds = a.comparator == Comparator::Greater ? *v > a.threshold : *v >= a.threshold;
        if (!holds) verdict.violations.push_back({a, v, {}});
    }
    return verdict;
}

QaVerdict qa_gate(const SectorMetrics& m, std::span<const QaAssertion> assertions, persistence::AppendLog& alerts,
                  Timestamp at, const std::string& model_version) {
    auto verdict = evaluate_assertions(m, assertions);
    if (!verdict.pass()) alerts.append({format_timestamp(at), model_version, verdict.summary()});
    return verdict;
}

}  // namespace sectorinfer::evaluation
