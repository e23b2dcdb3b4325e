#include "sectorinfer/orchestrator/registry.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/text.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <algorithm>

namespace sectorinfer::orchestrator {

namespace {

constexpr std::string_view kExtension = ".ckpt";

}  // namespace

ModelRegistry::ModelRegistry(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::string ModelRegistry::release(const std::string& checkpoint_bytes) {
    const std::string version = genmodel::checkpoint_version(checkpoint_bytes);
    persistence::write_file_atomic(path_of(version), checkpoint_bytes);
    persistence::write_file_atomic(dir_ / "CURRENT", version + "\n");
    return version;
}

std::optional<std::string> ModelRegistry::current() const {
    const auto pointer = dir_ / "CURRENT";
    if (!std::filesystem::exists(pointer)) return std::nullopt;
    std::string version(text::trim(persistence::read_file(pointer)));
    if (version.empty()) return std::nullopt;
    if (!std::filesystem::exists(path_of(version))) throw Error(ErrorKind::Io, "DanglingCurrent", version);
    return version;
}

std::vector<std::string> ModelRegistry::versions() const {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (entry.path().extension() == kExtension) out.push_back(entry.path().stem().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::filesystem::path ModelRegistry::path_of(const std::string& version) const {
    return dir_ / (version + std::string(kExtension));
}

genmodel::Checkpoint ModelRegistry::load(const std::string& version) const {
    return genmodel::load_checkpoint(path_of(version));
}

}  // namespace sectorinfer::orchestrator
