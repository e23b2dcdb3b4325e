#pragma once

#include "sectorinfer/genmodel/params.hpp"
#include "sectorinfer/genmodel/vocabulary.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sectorinfer::genmodel {

/// Everything needed to reload a model: shape, paradigm, vocabulary, class
/// labels (M-way), parameters and free-form metadata (training step,
/// validation accuracy, ...). A backbone-only file has an empty head and
/// prompt.
struct Checkpoint {
    ModelParams params;
    Paradigm paradigm = Paradigm::PromptPlusModelTuning;
    Vocabulary vocabulary;
    std::vector<std::string> labels;
    std::map<std::string, std::string> metadata;
};

/// "SICKPT1\n", u64 header length, JSON header, raw little-endian doubles in
/// canonical tensor order. The same checkpoint always produces the same bytes.
std::string serialize_checkpoint(const Checkpoint& ckpt);

/// Throws Error{Model, "BadCheckpoint"}.
Checkpoint parse_checkpoint(std::string_view bytes);

/// Short content hash of the serialized bytes; used as the model version.
std::string checkpoint_version(std::string_view bytes);

/// Atomic write; returns the version.
std::string save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace sectorinfer::genmodel
