#pragma once

#include "sectorinfer/genmodel/checkpoint.hpp"
#include "sectorinfer/genmodel/transformer.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sectorinfer::genmodel {

/// Token ids of a filled-template input, truncated to shape.max_input.
std::vector<int> encode_input(const Vocabulary& vocab, const ModelShape& shape, std::string_view input_text);

/// Encoded (input, target) pair; `label` is the class index for M-way.
Example make_example(const Vocabulary& vocab, const ModelShape& shape, std::string_view input_text,
                     std::string_view target_text, int label = -1);

/// A loaded checkpoint plus its version, ready to predict. Immutable and
/// safe to share across threads.
class SectorModel {
public:
    SectorModel(Checkpoint checkpoint, std::string version);

    /// Generated sector text (normalized form), or the arg-max label for an
    /// M-way model. Generated text is returned verbatim even when it names no
    /// known sector.
    std::string predict(std::string_view input_text) const;

    const Checkpoint& checkpoint() const noexcept { return checkpoint_; }
    const std::string& version() const noexcept { return version_; }

private:
    Checkpoint checkpoint_;
    std::string version_;
};

}  // namespace sectorinfer::genmodel
