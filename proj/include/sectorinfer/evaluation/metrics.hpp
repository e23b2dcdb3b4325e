#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sectorinfer::evaluation {

/// Rows are gold sectors, columns predicted sectors plus a trailing "novel"
/// column for predictions that name no listed sector.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::vector<std::string> sectors);

    const std::vector<std::string>& sectors() const noexcept { return sectors_; }
    std::size_t size() const noexcept { return sectors_.size(); }
    std::size_t novel_column() const noexcept { return sectors_.size(); }

    /// Index of a sector name, or novel_column() if unlisted.
    std::size_t column_of(std::string_view name) const;

    std::size_t at(std::size_t gold, std::size_t predicted) const { return counts_[gold][predicted]; }
    std::size_t total() const noexcept { return total_; }
    std::size_t row_total(std::size_t gold) const;
    std::size_t column_total(std::size_t predicted) const;
    std::size_t trace() const;

    /// Throws Error{Data, "UnknownGold"} when `gold` is not listed.
    void add(std::string_view gold, std::string_view predicted);

private:
    std::vector<std::string> sectors_;
    std::vector<std::vector<std::size_t>> counts_;
    std::size_t total_ = 0;
};

/// Throws Error{Data, "LengthMismatch"} and Error{Data, "DuplicateSector"}.
ConfusionMatrix confusion(std::span<const std::string> golds, std::span<const std::string> preds,
                          std::vector<std::string> sector_list);

/// Undefined (zero-denominator) values are std::nullopt.
struct SectorScore {
    std::string sector;
    std::optional<double> precision;
    std::optional<double> recall;
    std::size_t support = 0;
};

struct SectorMetrics {
    std::vector<SectorScore> sectors;
    std::optional<double> accuracy;
    /// Macro averages over sectors whose value is defined.
    std::optional<double> mean_precision;
    std::optional<double> mean_recall;
    std::size_t novel = 0;
    std::size_t total = 0;

    const SectorScore* find(std::string_view sector) const;
};

SectorMetrics metrics(const ConfusionMatrix& matrix);

/// Tab-separated: sector, precision, recall, support ("undefined" for
/// missing values), then an overall line.
std::string format_metrics(const SectorMetrics& m);

/// Shortest round-trip decimal form.
std::string format_value(std::optional<double> v);

}  // namespace sectorinfer::evaluation
