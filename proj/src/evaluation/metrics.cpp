#include "sectorinfer/evaluation/metrics.hpp"

#include "sectorinfer/common/error.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace sectorinfer::evaluation {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> sectors) : sectors_(std::move(sectors)) {
    std::set<std::string_view> seen;
    for (const auto& s : sectors_) {
        if (!seen.insert(s).second) throw Error(ErrorKind::Data, "DuplicateSector", s);
    }
    counts_.assign(sectors_.size(), std::vector<std::size_t>(sectors_.size() + 1, 0));
}

std::size_t ConfusionMatrix::column_of(std::string_view name) const {
    const auto it = std::find(sectors_.begin(), sectors_.end(), name);
    return static_cast<std::size_t>(it - sectors_.begin());
}

std::size_t ConfusionMatrix::row_total(std::size_t gold) const {
    std::size_t n = 0;
    for (const auto c : counts_[gold]) n += c;
    return n;
}

std::size_t ConfusionMatrix::column_total(std::size_t predicted) const {
    std::size_t n = 0;
    for (const auto& row : counts_) n += row[predicted];
    return n;
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < sectors_.size(); ++i) n += counts_[i][i];
    return n;
}

void ConfusionMatrix::add(std::string_view gold, std::string_view predicted) {
    const std::size_t g = column_of(gold);
    if (g == novel_column()) throw Error(ErrorKind::Data, "UnknownGold", std::string(gold));
    ++counts_[g][column_of(predicted)];
    ++total_;
}

ConfusionMatrix confusion(std::span<const std::string> golds, std::span<const std::string> preds,
                          std::vector<std::string> sector_list) {
    if (golds.size() != preds.size()) {
        throw Error(ErrorKind::Data, "LengthMismatch",
                    std::to_string(golds.size()) + " golds vs " + std::to_string(preds.size()) + " predictions");
    }
    ConfusionMatrix m(std::move(sector_list));
    for (std::size_t i = 0; i < golds.size(); ++i) m.add(golds[i], preds[i]);
    return m;
}

const SectorScore* SectorMetrics::find(std::string_view sector) const {
    for (const auto& s : sectors) {
        if (s.sector == sector) return &s;
    }
    return nullptr;
}

SectorMetrics metrics(const ConfusionMatrix& matrix) {
    SectorMetrics out;
    out.total = matrix.total();
    out.novel = matrix.column_total(matrix.novel_column());
    const auto ratio = [](std::size_t num, std::size_t den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    double p_sum = 0.0, r_sum = 0.0;
    std::size_t p_n = 0, r_n = 0;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        SectorScore s{matrix.sectors()[i], ratio(matrix.at(i, i), matrix.column_total(i)),
                      ratio(matrix.at(i, i), matrix.row_total(i)), matrix.row_total(i)};
        if (s.precision) {
            p_sum += *s.precision;
            ++p_n;
        }
        if (s.recall) {
            r_sum += *s.recall;
            ++r_n;
        }
        out.sectors.push_back(std::move(s));
    }
    out.accuracy = ratio(matrix.trace(), matrix.total());
    if (p_n > 0) out.mean_precision = p_sum / static_cast<double>(p_n);
    if (r_n > 0) out.mean_recall = r_sum / static_cast<double>(r_n);
    return out;
}

std::string format_value(std::optional<double> v) {
    if (!v) return "undefined";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, *v);
    return std::string(buf, res.ptr);
}

std::string format_metrics(const SectorMetrics& m) {
    std::string out = "sector\tprecision\trecall\tsupport\n";
    for (const auto& s : m.sectors) {
        out += s.sector + "\t" + format_value(s.precision) + "\t" + format_value(s.recall) + "\t" +
               std::to_string(s.support) + "\n";
    }
    out += "overall\t" + format_value(m.mean_precision) + "\t" + format_value(m.mean_recall) + "\t" +
           std::to_string(m.total) + "\n";
    out += "accuracy\t" + format_value(m.accuracy) + "\n";
    out += "novel\t" + std::to_string(m.novel) + "\n";
    return out;
}

}  // namespace sectorinfer::evaluation
