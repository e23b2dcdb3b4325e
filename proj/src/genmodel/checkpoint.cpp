#include "sectorinfer/genmodel/checkpoint.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/hash.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cstring>

namespace sectorinfer::genmodel {

static_assert(std::endian::native == std::endian::little, "checkpoint format assumes little-endian doubles");

namespace {

constexpr std::string_view kMagic = "SICKPT1\n";

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorKind::Model, "BadCheckpoint", why); }

nlohmann::ordered_json shape_json(const ModelShape& s) {
    return {{"vocab", s.vocab},         {"d_model", s.d_model},       {"heads", s.heads},
            {"ffn", s.ffn},             {"encoder_layers", s.encoder_layers}, {"decoder_layers", s.decoder_layers},
            {"prompt_length", s.prompt_length}, {"max_input", s.max_input}, {"max_output", s.max_output}};
}

ModelShape shape_from_json(const nlohmann::json& j) {
    ModelShape s;
    s.vocab = j.at("vocab").get<int>();
    s.d_model = j.at("d_model").get<int>();
    s.heads = j.at("heads").get<int>();
    s.ffn = j.at("ffn").get<int>();
    s.encoder_layers = j.at("encoder_layers").get<int>();
    s.decoder_layers = j.at("decoder_layers").get<int>();
    s.prompt_length = j.at("prompt_length").get<int>();
    s.max_input = j.at("max_input").get<int>();
    s.max_output = j.at("max_output").get<int>();
    if (s.vocab < 1 || s.d_model < 1 || s.heads < 1 || s.ffn < 1 || s.encoder_layers < 0 || s.decoder_layers < 0 ||
        s.prompt_length < 0 || s.max_input < 1 || s.max_output < 1) {
        bad("invalid shape");
    }
    return s;
}

/// Skeleton with the right shapes, values unset.
ModelParams skeleton(const ModelShape& shape, Eigen::Index head_rows, Eigen::Index head_cols, Eigen::Index prompt_rows,
                     Eigen::Index prompt_cols) {
    ModelParams p;
    p.shape = shape;
    p.plm = init_plm(shape, 0);
    p.head.projection.resize(head_rows, head_cols);
    p.prompt.vectors.resize(prompt_rows, prompt_cols);
    return p;
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& ckpt) {
    const auto& p = ckpt.params;
    check_shapes(p.plm, p.shape);
    nlohmann::ordered_json h;
    h["format"] = 1;
    h["shape"] = shape_json(p.shape);
    h["paradigm"] = std::string(to_string(ckpt.paradigm));
    h["head"] = {p.head.projection.rows(), p.head.projection.cols()};
    h["prompt"] = {p.prompt.vectors.rows(), p.prompt.vectors.cols()};
    h["vocabulary"] = ckpt.vocabulary.tokens();
    h["labels"] = ckpt.labels;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : ckpt.metadata) meta[k] = v;
    h["metadata"] = meta;
    const std::string header = h.dump();

    std::string out(kMagic);
    const std::uint64_t len = header.size();
    out.append(reinterpret_cast<const char*>(&len), sizeof len);
    out += header;
    for (const auto* t : tensors(p)) {
        out.append(reinterpret_cast<const char*>(t->data()), static_cast<std::size_t>(t->size()) * sizeof(double));
    }
    return out;
}

Checkpoint parse_checkpoint(std::string_view bytes) {
    if (bytes.substr(0, kMagic.size()) != kMagic) bad("missing magic");
    bytes.remove_prefix(kMagic.size());
    std::uint64_t len = 0;
    if (bytes.size() < sizeof len) bad("truncated header length");
    std::memcpy(&len, bytes.data(), sizeof len);
    bytes.remove_prefix(sizeof len);
    if (bytes.size() < len) bad("truncated header");
    Checkpoint ckpt;
    try {
        const auto h = nlohmann::json::parse(bytes.substr(0, len));
        if (h.at("format").get<int>() != 1) bad("unsupported format");
        const ModelShape shape = shape_from_json(h.at("shape"));
        ckpt.paradigm = parse_paradigm(h.at("paradigm").get<std::string>());
        const auto head = h.at("head").get<std::vector<Eigen::Index>>();
        const auto prompt = h.at("prompt").get<std::vector<Eigen::Index>>();
        if (head.size() != 2 || prompt.size() != 2) bad("bad tensor dims");
        ckpt.params = skeleton(shape, head[0], head[1], prompt[0], prompt[1]);
        ckpt.vocabulary = Vocabulary::from_tokens(h.at("vocabulary").get<std::vector<std::string>>());
        if (static_cast<int>(ckpt.vocabulary.size()) != shape.vocab) bad("vocabulary size does not match shape");
        ckpt.labels = h.at("labels").get<std::vector<std::string>>();
        for (const auto& [k, v] : h.at("metadata").items()) ckpt.metadata[k] = v.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        bad(e.what());
    } catch (const Error& e) {
        if (e.code() == "BadCheckpoint") throw;
        bad(e.code() + ": " + e.detail());
    }
    bytes.remove_prefix(len);
    for (auto* t : tensors(ckpt.params)) {
        const std::size_t n = static_cast<std::size_t>(t->size()) * sizeof(double);
        if (bytes.size() < n) bad("truncated tensor data");
        std::memcpy(t->data(), bytes.data(), n);
        bytes.remove_prefix(n);
    }
    if (!bytes.empty()) bad("trailing bytes");
    return ckpt;
}

std::string checkpoint_version(std::string_view bytes) { return short_hash(bytes); }

std::string save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
    const std::string bytes = serialize_checkpoint(ckpt);
    persistence::write_file_atomic(path, bytes);
    return checkpoint_version(bytes);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    return parse_checkpoint(persistence::read_file(path));
}

}  // namespace sectorinfer::genmodel
