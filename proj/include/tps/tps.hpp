#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tps/embeddings.hpp"
#include "tps/persistence.hpp"

namespace tps {

struct TpsReport {
    std::string word;
    std::size_t n = 0;
    double score = 0.0;
    std::size_t bars_used = 0;
    std::size_t coincident_skipped = 0;
    bool exhausted = false;
};

/// Topological polysemy of w: total persistence (halved) of the degree-0
/// diagram of w's sphere-projected punctured n-neighborhood. Normalizes `e`
/// first; use tps_score_normalized in loops.
TpsReport tps_score(const EmbeddingSet& e, const std::string& w, std::size_t n);

/// `unit` must already be L2-normalized.
TpsReport tps_score_normalized(const EmbeddingSet& unit, const std::string& w, std::size_t n,
                               PersistenceDiagram* diagram = nullptr);

struct TpsOutcome {
    std::string word;
    std::optional<TpsReport> report;
    std::string error;  // set when report is empty
};

/// Scores every word, parallel over words. Output order follows `words`
/// and is independent of thread count.
std::vector<TpsOutcome> tps_batch(const EmbeddingSet& unit, std::span<const std::string> words, std::size_t n);

/// TPS values of a fixed word set with their extremes.
class PercentileTable {
public:
    explicit PercentileTable(std::map<std::string, double> scores);

    const std::map<std::string, double>& scores() const noexcept { return scores_; }
    double tps_min() const noexcept { return min_; }
    double tps_max() const noexcept { return max_; }

private:
    std::map<std::string, double> scores_;
    double min_ = 0.0;
    double max_ = 0.0;
};

/// ceil((TPS(w) - min) / (max - min) * 100), in [0, 100]. Throws when the
/// table is degenerate (max == min) or w is missing.
int tps_percentile(const PercentileTable& table, const std::string& w);

/// Cluster count from a TPS percentile: 2 up to 1, percentile + 1 in
/// between, 100 at 100. Throws on input outside [0, 100].
int predicted_k(int percentile);

/// "word,n,tps" with 6 decimals; failed words are skipped.
void write_tps_csv(std::ostream& out, std::span<const TpsOutcome> outcomes);

struct TpsRow {
    std::string word;
    std::size_t n = 0;
    double tps = 0.0;
};
std::vector<TpsRow> read_tps_csv(std::istream& in, const std::string& source = "<stream>");

}  // namespace tps
