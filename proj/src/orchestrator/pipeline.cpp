#include "sectorinfer/orchestrator/pipeline.hpp"

#include "sectorinfer/attribution/attribution.hpp"
#include "sectorinfer/genmodel/pretrain.hpp"
#include "sectorinfer/genmodel/sector_model.hpp"

namespace sectorinfer::orchestrator {

std::vector<std::string> pretraining_texts(const company::CompanyStore& store, const framework::SectorTree& tree) {
    std::vector<std::string> texts;
    for (const auto& [id, c] : store.companies()) texts.push_back(company::render_template(c).input_text);
    for (const auto& id : framework::depth_first_index(tree)) texts.push_back(tree.node(id).name);
    return texts;
}

genmodel::Checkpoint pretrain_backbone(const company::CompanyStore& store, const framework::SectorTree& tree,
                                       const config::RunConfig& config) {
    const auto texts = pretraining_texts(store, tree);
    genmodel::Checkpoint ckpt;
    ckpt.vocabulary = genmodel::Vocabulary::build(texts, config.vocab_size);
    genmodel::ModelShape shape = config.model;
    shape.vocab = static_cast<int>(ckpt.vocabulary.size());

    std::vector<std::vector<int>> corpus;
    corpus.reserve(texts.size());
    for (const auto& t : texts) corpus.push_back(genmodel::encode_input(ckpt.vocabulary, shape, t));
    auto result = genmodel::pretrain(corpus, shape, config.pretrain);

    ckpt.params.shape = shape;
    ckpt.params.plm = std::move(result.plm);
    ckpt.paradigm = config.train.paradigm;
    ckpt.metadata = {{"kind", "backbone"},
                     {"steps", std::to_string(config.pretrain.steps)},
                     {"final_loss", result.losses.empty() ? "-" : std::to_string(result.losses.back())},
                     {"texts", std::to_string(texts.size())},
                     {"seed", std::to_string(config.seed)}};
    return ckpt;
}

ValidationReport evaluate_predictions(const company::CompanyStore& store, const framework::SectorTree& tree,
                                      const std::map<CompanyId, inference::PredictionRecord>& predictions,
                                      std::size_t threshold) {
    const auto attributed = attribution::attribute(tree, store, threshold);
    std::vector<std::string> labels;
    for (const auto& e : attributed.eligible) labels.push_back(tree.node(e.sector).name);
    ValidationReport r{evaluation::ConfusionMatrix(labels), {}};
    for (const auto& e : attributed.eligible) {
        const std::string& gold = tree.node(e.sector).name;
        for (const auto& c : e.companies) {
            const auto it = predictions.find(c);
            if (it == predictions.end()) continue;
            const auto& p = it->second;
            r.matrix.add(gold, p.matched_sector ? tree.node(*p.matched_sector).name : p.generated_text);
        }
    }
    r.metrics = evaluation::metrics(r.matrix);
    return r;
}

}  // namespace sectorinfer::orchestrator
