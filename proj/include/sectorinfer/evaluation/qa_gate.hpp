#pragma once

#include "sectorinfer/common/time.hpp"
#include "sectorinfer/evaluation/metrics.hpp"
#include "sectorinfer/persistence/append_log.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sectorinfer::evaluation {

enum class Metric { Precision, Recall, Accuracy };
enum class Comparator { Greater, GreaterEqual };

inline constexpr std::string_view kOverall = "overall";

/// "<sector> <metric> <comparator> <threshold>". The sector "overall"
/// refers to the macro averages (precision, recall) or to accuracy;
/// accuracy is only defined for "overall".
struct QaAssertion {
    std::string sector;
    Metric metric = Metric::Precision;
    Comparator comparator = Comparator::Greater;
    double threshold = 0.0;

    std::string describe() const;
    bool operator==(const QaAssertion&) const = default;
};

/// One assertion per line: sector, metric, comparator (> or >=), threshold,
/// separated by tabs. Blank lines and '#' comments are skipped. Throws
/// Error{Config, "BadAssertion"} with the line number.
std::vector<QaAssertion> parse_assertions(std::string_view document);
std::vector<QaAssertion> load_assertions(const std::filesystem::path& path);

struct Violation {
    QaAssertion assertion;
    std::optional<double> observed;
    std::string reason;
};

struct QaVerdict {
    std::vector<Violation> violations;

    bool pass() const noexcept { return violations.empty(); }
    /// "; "-joined violation descriptions.
    std::string summary() const;
};

/// Value an assertion refers to; nullopt when undefined or unknown.
std::optional<double> observed_value(const SectorMetrics& m, const QaAssertion& a);

/// Passes iff every assertion holds. Unknown sectors and undefined metrics
/// are violations.
QaVerdict evaluate_assertions(const SectorMetrics& m, std::span<const QaAssertion> assertions);

/// evaluate_assertions plus the alert contract: a failing verdict appends
/// exactly one record (timestamp, model version, summary) to `alerts`; a
/// passing one appends nothing.
QaVerdict qa_gate(const SectorMetrics& m, std::span<const QaAssertion> assertions, persistence::AppendLog& alerts,
                  Timestamp at, const std::string& model_version);

}  // namespace sectorinfer::evaluation
