#include "sectorinfer/synth/corpus.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/company/template.hpp"

#include <array>
#include <cstdio>
#include <random>
#include <string_view>

namespace sectorinfer::synth {

namespace {

struct LeafSector {
    std::string_view name;
    std::array<std::string_view, 12> keywords;
};

// Pools are pairwise disjoint.
constexpr std::array<LeafSector, 16> kLeaves{{
    {"financial service",
     {"payments", "lending", "banking", "credit", "remittance", "brokerage", "wallets", "invoicing", "loans",
      "deposits", "underwriting", "clearing"}},
    {"vertical software",
     {"crm", "erp", "saas", "scheduling", "dispatch", "rostering", "workflow", "booking", "ticketing", "dashboards",
      "licensing", "configurators"}},
    {"health care",
     {"clinics", "patients", "nursing", "diagnostics", "telemedicine", "therapy", "dental", "hospitals",
      "caregivers", "radiology", "pharmacy", "rehabilitation"}},
    {"renewable energy",
     {"solar", "wind", "turbines", "batteries", "hydrogen", "photovoltaic", "geothermal", "charging", "inverters",
      "biomass", "microgrids", "storage"}},
    {"consumer goods",
     {"apparel", "cosmetics", "footwear", "furniture", "toys", "beverages", "snacks", "fragrances", "eyewear",
      "jewellery", "homeware", "skincare"}},
    {"industrial machinery",
     {"pumps", "valves", "compressors", "gearboxes", "hydraulics", "bearings", "conveyors", "welding", "machining",
      "castings", "robotics", "actuators"}},
    {"real estate",
     {"properties", "leasing", "tenants", "apartments", "offices", "warehouses", "landlords", "mortgages",
      "rentals", "developments", "facilities", "brokers"}},
    {"education technology",
     {"courses", "students", "tutoring", "classrooms", "curriculum", "learning", "exams", "teachers", "lessons",
      "campuses", "certification", "quizzes"}},
    {"logistics",
     {"freight", "shipping", "parcels", "trucking", "warehousing", "couriers", "containers", "fleet", "routing",
      "customs", "forwarding", "delivery"}},
    {"cyber security",
     {"encryption", "firewalls", "malware", "authentication", "threats", "vulnerabilities", "intrusion", "identity",
      "phishing", "forensics", "endpoints", "passwords"}},
    {"biotechnology",
     {"genomics", "antibodies", "proteins", "vaccines", "enzymes", "cells", "sequencing", "biologics", "molecules",
      "trials", "peptides", "assays"}},
    {"media",
     {"publishing", "broadcasting", "podcasts", "streaming", "newspapers", "magazines", "films", "advertising",
      "journalism", "studios", "audiences", "editorial"}},
    {"agriculture",
     {"crops", "farming", "seeds", "fertilizer", "irrigation", "livestock", "harvest", "grain", "dairy", "orchards",
      "greenhouses", "tractors"}},
    {"insurance",
     {"policies", "claims", "premiums", "actuarial", "reinsurance", "coverage", "insurers", "liability", "annuities",
      "indemnity", "adjusters", "pensions"}},
    {"telecommunications",
     {"broadband", "fiber", "mobile", "antennas", "spectrum", "networks", "roaming", "satellites", "towers",
      "routers", "carriers", "bandwidth"}},
    {"food service",
     {"restaurants", "catering", "kitchens", "menus", "chefs", "cafes", "bakeries", "meals", "takeaway", "canteens",
      "dining", "recipes"}},
}};

constexpr std::array<std::string_view, 6> kGroups{"digital economy", "real economy", "life and society",
                                                  "infrastructure", "services", "industry"};

constexpr std::array<std::string_view, 20> kNamePrefix{"nordic", "apex",  "blue",   "north",  "silver", "granite",
                                                       "crest",  "vista", "polar",  "delta",  "oak",    "summit",
                                                       "harbor", "lumen", "aurora", "falcon", "meadow", "bright",
                                                       "iron",   "coral"};

constexpr std::array<std::string_view, 12> kNameSuffix{"labs",    "group",    "systems", "partners", "holding", "works",
                                                       "solutions", "company", "ventures", "industries", "collective",
                                                       "studio"};

constexpr std::array<std::string_view, 4> kLeads{"a provider of", "a company offering", "a firm focused on",
                                                 "a business specialising in"};

std::string company_id(int k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "c%05d", k);
    return buf;
}

}  // namespace

int max_sectors() { return static_cast<int>(kLeaves.size()); }

void SyntheticSpec::validate() const {
    const auto fail = [](const std::string& why) { throw Error(ErrorKind::Config, "InvalidSpec", why); };
    if (sectors < 1 || sectors > max_sectors()) fail("sectors must be in [1, " + std::to_string(max_sectors()) + "]");
    if (groups < 1 || groups > sectors || groups > static_cast<int>(kGroups.size())) fail("bad group count");
    if (samples_per_sector < 1) fail("samples_per_sector must be >= 1");
    if (keywords_per_sector < 1 || keywords_per_sector > static_cast<int>(kLeaves[0].keywords.size())) {
        fail("keywords_per_sector must be in [1, 12]");
    }
    if (tags_per_company < 0 || description_keywords < 1) fail("bad keyword counts");
    if (!(noise >= 0.0 && noise <= 1.0)) fail("noise must be in [0, 1]");
}

SyntheticCorpus gen_corpus(const SyntheticSpec& spec, std::uint64_t seed, Timestamp at) {
    spec.validate();
    SyntheticCorpus out;
    std::vector<framework::FrameworkRecord> records;
    for (int g = 0; g < spec.groups; ++g) {
        records.push_back({SectorId("s" + std::to_string(g + 1)), SectorId(), std::string(kGroups[g]), g});
    }
    std::vector<SectorId> leaves;
    std::vector<std::string> union_pool;
    for (int m = 0; m < spec.sectors; ++m) {
        const int group = m * spec.groups / spec.sectors;
        SectorId id("s" + std::to_string(spec.groups + m + 1));
        records.push_back({id, SectorId("s" + std::to_string(group + 1)), std::string(kLeaves[m].name), m});
        auto& pool = out.pools[id];
        for (int k = 0; k < spec.keywords_per_sector; ++k) {
            pool.emplace_back(kLeaves[m].keywords[k]);
            union_pool.emplace_back(kLeaves[m].keywords[k]);
        }
        leaves.push_back(std::move(id));
    }
    out.tree = framework::SectorTree::from_records(std::move(records));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const auto keyword = [&](const std::vector<std::string>& own) -> const std::string& {
        if (coin(rng) < spec.noise) return union_pool[pick(union_pool.size())];
        return own[pick(own.size())];
    };

    int next = 1;
    for (int i = 0; i < spec.samples_per_sector; ++i) {
        for (int m = 0; m < spec.sectors; ++m) {
            const auto& pool = out.pools.at(leaves[m]);
            company::Company c;
            c.id = CompanyId(company_id(next++));
            c.legal_name = std::string(kNamePrefix[pick(kNamePrefix.size())]) + " " +
                           std::string(kNameSuffix[pick(kNameSuffix.size())]);
            for (int t = 0; t < spec.tags_per_company; ++t) c.tags.push_back(keyword(pool));
            std::vector<std::string> words;
            for (int k = 0; k < spec.description_keywords; ++k) words.push_back(keyword(pool));
            c.description = std::string(kLeads[pick(kLeads.size())]) + " " + company::join_tags(words);
            c.feature_version = company::compute_feature_version(c);
            out.truth.emplace(c.id, leaves[m]);
            out.events.push_back({at, c.id, leaves[m], company::AnnotationAction::Add});
            out.companies.push_back(std::move(c));
        }
    }
    return out;
}

void write_corpus(const SyntheticCorpus& corpus, const CorpusPaths& paths) {
    framework::save_framework(corpus.tree, paths.framework);
    company::CompanyStore store;
    for (const auto& c : corpus.companies) store.upsert_company(c);
    company::save_companies(store, paths.companies);
    std::error_code ec;
    std::filesystem::remove(paths.annotations, ec);
    company::append_annotation_events(paths.annotations, corpus.events);
}

}  // namespace sectorinfer::synth
