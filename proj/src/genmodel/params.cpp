#include "sectorinfer/genmodel/params.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/hash.hpp"

#include <cmath>
#include <random>

namespace sectorinfer::genmodel {

std::string_view to_string(Paradigm p) {
    switch (p) {
        case Paradigm::Prompting: return "prompting";
        case Paradigm::PromptTuning: return "prompt-tuning";
        case Paradigm::ModelTuning: return "model-tuning";
        case Paradigm::PromptPlusModelTuning: return "prompt-model-tuning";
        case Paradigm::MWayClassification: return "m-way";
    }
    return "?";
}

Paradigm parse_paradigm(std::string_view s) {
    for (auto p : {Paradigm::Prompting, Paradigm::PromptTuning, Paradigm::ModelTuning,
                   Paradigm::PromptPlusModelTuning, Paradigm::MWayClassification}) {
        if (s == to_string(p)) return p;
    }
    throw Error(ErrorKind::Config, "UnknownParadigm", std::string(s));
}

bool uses_prompts(Paradigm p) { return p == Paradigm::PromptTuning || p == Paradigm::PromptPlusModelTuning; }

bool is_discriminative(Paradigm p) { return p == Paradigm::MWayClassification; }

namespace {

template <class Attn, class Out>
void push_attention(Attn& a, Out& out) {
    out.push_back(&a.wq);
    out.push_back(&a.wk);
    out.push_back(&a.wv);
    out.push_back(&a.wo);
}

template <class P, class Out>
void collect(P& p, Out& out) {
    out.push_back(&p.embedding);
    for (auto& l : p.encoder) {
        out.push_back(&l.norm1);
        push_attention(l.self_attn, out);
        out.push_back(&l.norm2);
        out.push_back(&l.w_in);
        out.push_back(&l.w_out);
    }
    out.push_back(&p.encoder_norm);
    for (auto& l : p.decoder) {
        out.push_back(&l.norm1);
        push_attention(l.self_attn, out);
        out.push_back(&l.norm2);
        push_attention(l.cross_attn, out);
        out.push_back(&l.norm3);
        out.push_back(&l.w_in);
        out.push_back(&l.w_out);
    }
    out.push_back(&p.decoder_norm);
}

template <class M, class Out>
void collect_model(M& p, GradMask groups, Out& out) {
    if (groups.plm) collect(p.plm, out);
    if (groups.head) out.push_back(&p.head.projection);
    if (groups.prompt) out.push_back(&p.prompt.vectors);
}

Mat gaussian(Eigen::Index rows, Eigen::Index cols, double stddev, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, stddev);
    Mat m(rows, cols);
    // Column-major fill order is part of the determinism contract.
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
    }
    return m;
}

AttentionParams init_attention(int d, std::mt19937_64& rng) {
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    return {gaussian(d, d, s, rng), gaussian(d, d, s, rng), gaussian(d, d, s, rng), gaussian(d, d, s, rng)};
}

void expect_shape(const Mat& m, Eigen::Index rows, Eigen::Index cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols) {
        throw Error(ErrorKind::Model, "ShapeMismatch",
                    std::string(what) + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    }
}

}  // namespace

std::vector<Mat*> tensors(PlmParams& p) {
    std::vector<Mat*> out;
    collect(p, out);
    return out;
}

std::vector<const Mat*> tensors(const PlmParams& p) {
    std::vector<const Mat*> out;
    collect(p, out);
    return out;
}

std::vector<Mat*> tensors(ModelParams& p, GradMask groups) {
    std::vector<Mat*> out;
    collect_model(p, groups, out);
    return out;
}

std::vector<const Mat*> tensors(const ModelParams& p, GradMask groups) {
    std::vector<const Mat*> out;
    collect_model(p, groups, out);
    return out;
}

PlmParams zeros_like(const PlmParams& p) {
    PlmParams z = p;
    for (auto* t : tensors(z)) t->setZero();
    return z;
}

ModelParams zeros_like(const ModelParams& p) {
    ModelParams z = p;
    for (auto* t : tensors(z)) t->setZero();
    return z;
}

PlmParams init_plm(const ModelShape& shape, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int d = shape.d_model;
    const double s_d = 1.0 / std::sqrt(static_cast<double>(d));
    const double s_f = 1.0 / std::sqrt(static_cast<double>(shape.ffn));
    PlmParams p;
    p.embedding = gaussian(shape.vocab, d, 1.0, rng);
    for (int l = 0; l < shape.encoder_layers; ++l) {
        EncoderLayerParams e;
        e.norm1 = Mat::Ones(1, d);
        e.self_attn = init_attention(d, rng);
        e.norm2 = Mat::Ones(1, d);
        e.w_in = gaussian(d, shape.ffn, s_d, rng);
        e.w_out = gaussian(shape.ffn, d, s_f, rng);
        p.encoder.push_back(std::move(e));
    }
    p.encoder_norm = Mat::Ones(1, d);
    for (int l = 0; l < shape.decoder_layers; ++l) {
        DecoderLayerParams dl;
        dl.norm1 = Mat::Ones(1, d);
        dl.self_attn = init_attention(d, rng);
        dl.norm2 = Mat::Ones(1, d);
        dl.cross_attn = init_attention(d, rng);
        dl.norm3 = Mat::Ones(1, d);
        dl.w_in = gaussian(d, shape.ffn, s_d, rng);
        dl.w_out = gaussian(shape.ffn, d, s_f, rng);
        p.decoder.push_back(std::move(dl));
    }
    p.decoder_norm = Mat::Ones(1, d);
    return p;
}

HeadParams init_head(const ModelShape& shape, int outputs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return {gaussian(shape.d_model, outputs, 1.0 / std::sqrt(static_cast<double>(shape.d_model)), rng)};
}

SoftPrompt init_prompt(const ModelShape& shape, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return {gaussian(shape.prompt_length, shape.d_model, 1.0, rng)};
}

std::string hash_tensors(const std::vector<const Mat*>& ts) {
    Sha256 h;
    for (const auto* t : ts) {
        h.update_u64(static_cast<std::uint64_t>(t->rows())).update_u64(static_cast<std::uint64_t>(t->cols()));
        h.update(std::span<const std::byte>(reinterpret_cast<const std::byte*>(t->data()),
                                            static_cast<std::size_t>(t->size()) * sizeof(double)));
    }
    return h.hex();
}

std::string hash_group(const PlmParams& p) { return hash_tensors(tensors(p)); }
std::string hash_group(const HeadParams& p) { return hash_tensors({&p.projection}); }
std::string hash_group(const SoftPrompt& p) { return hash_tensors({&p.vectors}); }

bool all_finite(const std::vector<const Mat*>& ts) {
    for (const auto* t : ts) {
        if (!t->allFinite()) return false;
    }
    return true;
}

std::size_t parameter_count(const std::vector<const Mat*>& ts) {
    std::size_t n = 0;
    for (const auto* t : ts) n += static_cast<std::size_t>(t->size());
    return n;
}

void check_shapes(const PlmParams& p, const ModelShape& shape) {
    const int d = shape.d_model;
    expect_shape(p.embedding, shape.vocab, d, "embedding");
    if (static_cast<int>(p.encoder.size()) != shape.encoder_layers ||
        static_cast<int>(p.decoder.size()) != shape.decoder_layers) {
        throw Error(ErrorKind::Model, "ShapeMismatch", "layer count");
    }
    const auto check_attn = [&](const AttentionParams& a) {
        for (const Mat* m : {&a.wq, &a.wk, &a.wv, &a.wo}) expect_shape(*m, d, d, "attention");
    };
    for (const auto& l : p.encoder) {
        expect_shape(l.norm1, 1, d, "norm");
        expect_shape(l.norm2, 1, d, "norm");
        check_attn(l.self_attn);
        expect_shape(l.w_in, d, shape.ffn, "ffn in");
        expect_shape(l.w_out, shape.ffn, d, "ffn out");
    }
    for (const auto& l : p.decoder) {
        expect_shape(l.norm1, 1, d, "norm");
        expect_shape(l.norm2, 1, d, "norm");
        expect_shape(l.norm3, 1, d, "norm");
        check_attn(l.self_attn);
        check_attn(l.cross_attn);
        expect_shape(l.w_in, d, shape.ffn, "ffn in");
        expect_shape(l.w_out, shape.ffn, d, "ffn out");
    }
    expect_shape(p.encoder_norm, 1, d, "encoder norm");
    expect_shape(p.decoder_norm, 1, d, "decoder norm");
    if (d % shape.heads != 0) throw Error(ErrorKind::Model, "ShapeMismatch", "d_model not divisible by heads");
}

}  // namespace sectorinfer::genmodel
