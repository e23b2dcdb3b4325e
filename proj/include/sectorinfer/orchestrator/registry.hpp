#pragma once

#include "sectorinfer/genmodel/checkpoint.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sectorinfer::orchestrator {

/// Directory of `<version>.ckpt` files plus a `CURRENT` pointer naming the
/// released version. The checkpoint is written before the pointer moves, so
/// CURRENT always names an existing file.
class ModelRegistry {
public:
    explicit ModelRegistry(std::filesystem::path dir);

    /// Stores the serialized checkpoint and points CURRENT at it. Returns
    /// the version.
    std::string release(const std::string& checkpoint_bytes);

    /// Throws Error{Io, "DanglingCurrent"} if CURRENT names a missing file.
    std::optional<std::string> current() const;
    std::vector<std::string> versions() const;
    std::filesystem::path path_of(const std::string& version) const;
    genmodel::Checkpoint load(const std::string& version) const;

private:
    std::filesystem::path dir_;
};

}  // namespace sectorinfer::orchestrator
