#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sectorinfer::company {

/// The three slots of the sample template, kept separately so augmentation
/// can perturb each one on its own.
struct TemplateFields {
    std::string name;
    std::vector<std::string> tags;
    std::string description;

    bool operator==(const TemplateFields&) const = default;
};

/// A filled sample c'. `input_text` always ends with "Sector:"; the target is
/// the sector name (empty at inference time).
struct FilledSample {
    TemplateFields fields;
    std::string input_text;
    std::string target_text;

    /// Input plus the answer slot, e.g. "... Sector: financial service." or
    /// "... Sector: [s]." when there is no target.
    std::string display_text() const;

    bool operator==(const FilledSample&) const = default;
};

inline constexpr std::string_view kSectorMarker = "Sector:";

/// "[NAME], concerns [TAGS], is [c]. Sector:"
/// Empty tags drop the "concerns" clause and an empty description drops the
/// "is" clause. Tags read "a", "a and b", "a, b and c".
std::string render_input(const TemplateFields& fields);

FilledSample make_sample(TemplateFields fields, std::string target = {});

/// "a and b" / "a, b and c"
std::string join_tags(const std::vector<std::string>& tags);

}  // namespace sectorinfer::company
