#include "sectorinfer/genmodel/sector_model.hpp"

#include "sectorinfer/common/error.hpp"

namespace sectorinfer::genmodel {

std::vector<int> encode_input(const Vocabulary& vocab, const ModelShape& shape, std::string_view input_text) {
    auto ids = vocab.encode(input_text);
    if (static_cast<int>(ids.size()) > shape.max_input) ids.resize(static_cast<std::size_t>(shape.max_input));
    return ids;
}

Example make_example(const Vocabulary& vocab, const ModelShape& shape, std::string_view input_text,
                     std::string_view target_text, int label) {
    Example ex{encode_input(vocab, shape, input_text), vocab.encode(target_text), label};
    if (static_cast<int>(ex.target.size()) > shape.max_output) {
        throw Error(ErrorKind::Data, "TargetTooLong", std::string(target_text));
    }
    return ex;
}

SectorModel::SectorModel(Checkpoint checkpoint, std::string version)
    : checkpoint_(std::move(checkpoint)), version_(std::move(version)) {
    if (is_discriminative(checkpoint_.paradigm) &&
        static_cast<Eigen::Index>(checkpoint_.labels.size()) != checkpoint_.params.head.projection.cols()) {
        throw Error(ErrorKind::Model, "BadCheckpoint", "label count does not match the M-way head");
    }
}

std::string SectorModel::predict(std::string_view input_text) const {
    const auto& p = checkpoint_.params;
    const auto ids = encode_input(checkpoint_.vocabulary, p.shape, input_text);
    if (is_discriminative(checkpoint_.paradigm)) return checkpoint_.labels.at(static_cast<std::size_t>(classify(p, ids)));
    const auto out = generate(p, checkpoint_.paradigm, ids, p.shape.max_output);
    return checkpoint_.vocabulary.decode(out);
}

}  // namespace sectorinfer::genmodel
