#include "sectorinfer/company/template.hpp"

#include "sectorinfer/common/text.hpp"

namespace sectorinfer::company {

namespace {

std::string clean_description(std::string_view raw) {
    auto d = text::trim(raw);
    while (!d.empty() && d.back() == '.') d = text::trim(d.substr(0, d.size() - 1));
    return std::string(d);
}

}  // namespace

std::string join_tags(const std::vector<std::string>& tags) {
    std::vector<std::string> kept;
    for (const auto& t : tags) {
        const auto trimmed = text::trim(t);
        if (!trimmed.empty()) kept.emplace_back(trimmed);
    }
    if (kept.empty()) return {};
    if (kept.size() == 1) return kept.front();
    std::string out;
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
        if (i) out += ", ";
        out += kept[i];
    }
    return out + " and " + kept.back();
}

std::string render_input(const TemplateFields& fields) {
    std::string out(text::trim(fields.name));
    const auto tags = join_tags(fields.tags);
    if (!tags.empty()) out += ", concerns " + tags;
    const auto desc = clean_description(fields.description);
    if (!desc.empty()) out += ", is " + desc;
    out += ". ";
    out += kSectorMarker;
    return out;
}

FilledSample make_sample(TemplateFields fields, std::string target) {
    FilledSample s;
    s.input_text = render_input(fields);
    s.fields = std::move(fields);
    s.target_text = std::move(target);
    return s;
}

std::string FilledSample::display_text() const {
    return input_text + " " + (target_text.empty() ? std::string("[s]") : target_text) + ".";
}

}  // namespace sectorinfer::company
