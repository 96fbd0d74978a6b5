#include "tps/wsi.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "tps/error.hpp"
#include "tps/neighborhood.hpp"
#include "tps/tps.hpp"

namespace tps {

std::string lemma_of(const std::string& target) {
    const auto dot = target.rfind('.');
    return dot == std::string::npos || dot == 0 ? target : target.substr(0, dot);
}

std::vector<Instance> parse_instances(std::istream& in, const std::string& source) {
    std::vector<Instance> out;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Instance inst;
        try {
            const auto j = nlohmann::json::parse(line);
            inst.target = j.at("target").get<std::string>();
            inst.id = j.at("id").get<std::string>();
            inst.tokens = j.at("tokens").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError(source, lineno, std::string("bad instance: ") + ex.what());
        }
        if (inst.target.empty()) throw ParseError(source, lineno, "empty target");
        if (inst.tokens.empty()) throw ParseError(source, lineno, "instance '" + inst.id + "' has no tokens");
        if (!ids.insert(inst.id).second) throw ParseError(source, lineno, "duplicate instance id '" + inst.id + "'");
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<Instance> load_instances(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instances file: " + path.string());
    return parse_instances(in, path.string());
}

SenseClusters induce_senses(const EmbeddingSet& unit, const std::string& target, std::size_t n,
                            const SenseBackend& backend, int k, std::uint64_t seed) {
    const NeighborhoodCloud cloud = punctured_neighborhood(unit, target, n);
    SenseClusters out;
    out.target = target;
    out.neighbors = cloud.words;

    if (const auto* db = std::get_if<DbscanParams>(&backend)) {
        out.clustering = dbscan(cloud.points, *db);
    } else {
        if (k < 1) throw InvalidArgument("k-means backend needs k >= 1, got " + std::to_string(k));
        out.requested_k = k;
        const int cap = static_cast<int>(std::min<std::size_t>(n, cloud.size()));
        if (k > cap) {
            k = cap;
            out.k_clamped = true;
        }
        out.clustering = kmeans(cloud.points, k, seed);
    }

    if (out.clustering.k == 0) {
        out.all_noise_fallback = true;
        out.clusters.push_back(out.neighbors);
    } else {
        out.clusters.resize(static_cast<std::size_t>(out.clustering.k));
        for (std::size_t i = 0; i < out.neighbors.size(); ++i) {
            const int label = out.clustering.labels[i];
            if (label != kNoise) out.clusters[static_cast<std::size_t>(label)].push_back(out.neighbors[i]);
        }
    }
    for (auto& c : out.clusters) std::sort(c.begin(), c.end());
    return out;
}

std::size_t assign_instance(const Instance& inst, const SenseClusters& senses) {
    if (senses.clusters.empty()) throw InvalidArgument("no sense clusters for '" + senses.target + "'");
    const std::string lemma = normalize_token(lemma_of(inst.target));
    std::set<std::string> context;
    for (const auto& t : inst.tokens) {
        auto tok = normalize_token(t);
        if (!tok.empty() && tok != lemma) context.insert(std::move(tok));
    }

    std::size_t best = 0;
    std::size_t best_hits = 0;
    std::size_t best_size = 1;
    for (std::size_t c = 0; c < senses.clusters.size(); ++c) {
        const auto& words = senses.clusters[c];
        std::size_t hits = 0;
        for (const auto& w : words) hits += context.count(w);
        const std::size_t size = words.size();
        if (c == 0) {
            best_hits = hits;
            best_size = size;
            continue;
        }
        // hits/size vs best_hits/best_size, compared exactly.
        const auto lhs = hits * best_size;
        const auto rhs = best_hits * size;
        if (lhs > rhs || (lhs == rhs && hits > best_hits)) {
            best = c;
            best_hits = hits;
            best_size = size;
        }
    }
    if (best_hits > 0) return best;

    std::size_t largest = 0;
    for (std::size_t c = 1; c < senses.clusters.size(); ++c) {
        if (senses.clusters[c].size() > senses.clusters[largest].size()) largest = c;
    }
    return largest;
}

std::string sense_label(const std::string& target, std::size_t cluster) {
    return target + "." + std::to_string(cluster + 1);
}

OpnResult run_opn(const EmbeddingSet& e, const std::vector<Instance>& instances, const OpnConfig& config) {
    std::set<std::string> target_set;
    for (const auto& inst : instances) target_set.insert(inst.target);
    const std::vector<std::string> targets(target_set.begin(), target_set.end());

    std::vector<std::string> missing;
    for (const auto& t : targets) {
        if (!e.contains(lemma_of(t))) missing.push_back(t);
    }
    if (!missing.empty()) {
        std::string msg = "targets not in vocabulary:";
        for (const auto& t : missing) msg += " " + t;
        throw Error(msg);
    }

    const EmbeddingSet unit = l2_normalize_all(e);
    OpnResult result;

    std::vector<int> ks(targets.size(), 0);
    if (const auto* fixed = std::get_if<KMeansFixedK>(&config.backend)) {
        std::fill(ks.begin(), ks.end(), fixed->k);
    } else if (const auto* autok = std::get_if<KMeansAutoK>(&config.backend)) {
        std::vector<std::string> lemmas;
        for (const auto& t : targets) lemmas.push_back(lemma_of(t));
        const auto outcomes = tps_batch(unit, lemmas, autok->tps_n);
        std::map<std::string, double> scores;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (!outcomes[i].report) throw Error("TPS failed for '" + targets[i] + "': " + outcomes[i].error);
            scores[targets[i]] = outcomes[i].report->score;
        }
        const PercentileTable table(scores);
        for (std::size_t i = 0; i < targets.size(); ++i) ks[i] = predicted_k(tps_percentile(table, targets[i]));
        result.tps = std::move(scores);
    }

    std::vector<SenseClusters> senses(targets.size());
    std::vector<std::string> errors(targets.size());
    const auto count = static_cast<std::int64_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        try {
            senses[i] = induce_senses(unit, lemma_of(targets[i]), config.n, config.backend, ks[i], config.seed);
            senses[i].target = targets[i];
        } catch (const std::exception& ex) {
            errors[i] = targets[i] + ": " + ex.what();
        }
    }
    for (const auto& err : errors) {
        if (!err.empty()) throw Error("sense induction failed for " + err);
    }

    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& s = senses[i];
        if (s.k_clamped)
            result.log.push_back(targets[i] + ": k=" + std::to_string(s.requested_k) + " clamped to " +
                                 std::to_string(s.clustering.k));
        if (s.all_noise_fallback) result.log.push_back(targets[i] + ": all neighbors are noise, using one cluster");
        result.senses.emplace(targets[i], senses[i]);
    }

    result.key.reserve(instances.size());
    for (const auto& inst : instances) {
        const auto& s = result.senses.at(inst.target);
        result.key.push_back({inst.target, inst.id, sense_label(inst.target, assign_instance(inst, s))});
    }
    std::sort(result.key.begin(), result.key.end(), [](const KeyEntry& a, const KeyEntry& b) {
        return a.target != b.target ? a.target < b.target : a.id < b.id;
    });
    return result;
}

}  // namespace tps
