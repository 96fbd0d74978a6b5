#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tps/error.hpp"
#include "tps/io.hpp"

namespace tps {

struct VMeasure {
    double homogeneity = 0.0;
    double completeness = 0.0;
    double v = 0.0;
};

/// Conditional-entropy V-measure (beta = 1) of a predicted labeling against
/// gold classes; both spans are aligned by position. h is 1 when the gold
/// entropy is 0, c is 1 when the predicted entropy is 0.
VMeasure v_measure(std::span<const std::string> gold, std::span<const std::string> predicted);

struct PairedF {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

/// Instance-pair counts of one target: pairs sharing a predicted cluster,
/// pairs sharing a gold class, and pairs sharing both.
struct PairCounts {
    double predicted = 0.0;
    double gold = 0.0;
    double both = 0.0;
};

PairCounts pair_counts(std::span<const std::string> gold, std::span<const std::string> predicted);
/// P = both/predicted, R = both/gold, F their harmonic mean. No predicted
/// pairs gives P = 0 and F = 0; no gold pairs gives R = 0 and F = 0.
PairedF paired_f(const PairCounts& counts);
PairedF paired_fscore(std::span<const std::string> gold, std::span<const std::string> predicted);

struct PearsonResult {
    double r = 0.0;
    double p = 0.0;
    std::size_t samples = 0;
};

/// Sample Pearson correlation with a two-sided p-value from Student's t
/// with m - 2 degrees of freedom. Needs m >= 3 and non-constant inputs.
PearsonResult pearson_with_p(std::span<const double> x, std::span<const double> y);

struct ScoreRow {
    std::string target;
    std::size_t instances = 0;
    double f_score = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double v_measure = 0.0;
    double homogeneity = 0.0;
    double completeness = 0.0;
    double product = 0.0;
};

/// Per-target rows plus two aggregates:
///  - weighted: instance-count-weighted means of the per-target rows;
///  - global: V-measure over all instances with target-qualified labels,
///    and P/R/F from pair counts pooled over targets.
struct ScoreReport {
    std::vector<ScoreRow> per_target;
    ScoreRow weighted;
    ScoreRow global;
};

/// Raised when a solution key and gold key cover different instances.
class KeyMismatch : public Error {
public:
    KeyMismatch(std::vector<std::string> only_solution, std::vector<std::string> only_gold);

    const std::vector<std::string>& only_in_solution() const noexcept { return only_solution_; }
    const std::vector<std::string>& only_in_gold() const noexcept { return only_gold_; }

private:
    std::vector<std::string> only_solution_;
    std::vector<std::string> only_gold_;
};

/// Aligns the keys by instance id. Targets must agree per instance.
ScoreReport score_keys(const std::vector<KeyEntry>& solution, const std::vector<KeyEntry>& gold);

/// Header: target,instances,f_score,precision,recall,v_measure,homogeneity,
/// completeness,product. Aggregates come last as targets "ALL.weighted"
/// and "ALL.global". Values have 6 decimals.
void write_score_csv(std::ostream& out, const ScoreReport& report);

}  // namespace tps
