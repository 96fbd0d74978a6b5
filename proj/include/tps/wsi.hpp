#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tps/clustering.hpp"
#include "tps/embeddings.hpp"
#include "tps/io.hpp"

namespace tps {

/// One occurrence of a target word with its context.
struct Instance {
    std::string target;  // "lemma.pos", e.g. "house.n"
    std::string id;
    std::vector<std::string> tokens;
};

/// "house.n" -> "house"; a target without a '.' is its own lemma.
std::string lemma_of(const std::string& target);

/// JSON Lines with fields target, id, tokens. Throws ParseError on a bad
/// line, an empty token list or a repeated id.
std::vector<Instance> parse_instances(std::istream& in, const std::string& source = "<stream>");
std::vector<Instance> load_instances(const std::filesystem::path& path);

struct KMeansFixedK {
    int k = 30;
};
/// k(w) predicted from the TPS percentile of the target among all targets.
struct KMeansAutoK {
    std::size_t tps_n = 50;
};
using SenseBackend = std::variant<DbscanParams, KMeansFixedK, KMeansAutoK>;

/// Neighbor words of a target grouped into senses.
struct SenseClusters {
    std::string target;
    // Cluster vocabularies, each sorted; pairwise disjoint.
    std::vector<std::vector<std::string>> clusters;
    std::vector<std::string> neighbors;  // nearest first
    Clustering clustering;               // labels over `neighbors`
    int requested_k = 0;                 // k-means only, before clamping
    bool k_clamped = false;
    bool all_noise_fallback = false;
};

/// Clusters the L2-normalized vectors of `target`'s punctured n-neighborhood.
/// `unit` must be L2-normalized. `k` is required for k-means backends (for
/// KMeansAutoK the caller resolves k(w) first) and is clamped to n.
SenseClusters induce_senses(const EmbeddingSet& unit, const std::string& target, std::size_t n,
                            const SenseBackend& backend, int k = 0, std::uint64_t seed = 0);

/// Index of the cluster with the highest |context ∩ C| / |C|. Ties go to
/// the larger intersection, then the lower index; with no overlap at all
/// the largest cluster wins. The context is deduplicated, normalized like
/// tokenize() and stripped of the target's lemma.
std::size_t assign_instance(const Instance& inst, const SenseClusters& senses);

/// "house.n" + cluster 0 -> "house.n.1".
std::string sense_label(const std::string& target, std::size_t cluster);

struct OpnConfig {
    std::size_t n = 5000;
    SenseBackend backend = DbscanParams{};
    std::uint64_t seed = 0;
};

struct OpnResult {
    std::vector<KeyEntry> key;                    // sorted by (target, id)
    std::map<std::string, SenseClusters> senses;  // by target
    std::map<std::string, double> tps;            // KMeansAutoK only
    std::vector<std::string> log;
};

/// Induces senses once per distinct target (in parallel) and assigns every
/// instance. Throws Error listing all targets whose lemma is out of
/// vocabulary. Output does not depend on instance order.
OpnResult run_opn(const EmbeddingSet& e, const std::vector<Instance>& instances, const OpnConfig& config);

}  // namespace tps
