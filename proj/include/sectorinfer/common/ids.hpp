#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace sectorinfer {

/// String identifier tagged with the domain it belongs to, so a company id
/// cannot be passed where a sector id is expected.
template <class Tag>
class StrongId {
public:
    StrongId() = default;
    explicit StrongId(std::string value) : value_(std::move(value)) {}

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    auto operator<=>(const StrongId&) const = default;
    bool operator==(const StrongId&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const StrongId& id) { return os << id.value_; }

private:
    std::string value_;
};

struct SectorIdTag {};
struct CompanyIdTag {};

using SectorId = StrongId<SectorIdTag>;
using CompanyId = StrongId<CompanyIdTag>;

}  // namespace sectorinfer

template <class Tag>
struct std::hash<sectorinfer::StrongId<Tag>> {
    std::size_t operator()(const sectorinfer::StrongId<Tag>& id) const noexcept {
        return std::hash<std::string>{}(id.str());
    }
};
