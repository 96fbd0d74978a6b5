#include "tps/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <unordered_map>

#include <boost/math/distributions/students_t.hpp>

namespace tps {

namespace {

void check_aligned(std::span<const std::string> gold, std::span<const std::string> predicted) {
    if (gold.size() != predicted.size())
        throw InvalidArgument("label sequences differ in length: " + std::to_string(gold.size()) + " vs " +
                              std::to_string(predicted.size()));
    if (gold.empty()) throw InvalidArgument("cannot score an empty labeling");
}

struct Contingency {
    std::map<std::pair<std::size_t, std::size_t>, double> joint;
    std::vector<double> gold;
    std::vector<double> predicted;
    double total = 0.0;
};

Contingency contingency(std::span<const std::string> gold, std::span<const std::string> predicted) {
    Contingency t;
    std::unordered_map<std::string, std::size_t> gi, pi;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        auto [g, gnew] = gi.emplace(gold[i], gi.size());
        auto [p, pnew] = pi.emplace(predicted[i], pi.size());
        if (gnew) t.gold.push_back(0.0);
        if (pnew) t.predicted.push_back(0.0);
        t.gold[g->second] += 1.0;
        t.predicted[p->second] += 1.0;
        t.joint[{g->second, p->second}] += 1.0;
    }
    t.total = static_cast<double>(gold.size());
    return t;
}

double entropy(const std::vector<double>& counts, double total) {
    double h = 0.0;
    for (double c : counts) {
        if (c > 0.0) h -= (c / total) * std::log(c / total);
    }
    return h;
}

double pairs(double c) { return c * (c - 1.0) / 2.0; }

}  // namespace

VMeasure v_measure(std::span<const std::string> gold, std::span<const std::string> predicted) {
    check_aligned(gold, predicted);
    const Contingency t = contingency(gold, predicted);
    const double n = t.total;
    const double h_gold = entropy(t.gold, n);
    const double h_pred = entropy(t.predicted, n);

    // H(C|K) and H(K|C) from the joint counts.
    double h_gold_given_pred = 0.0;
    double h_pred_given_gold = 0.0;
    for (const auto& [cell, count] : t.joint) {
        h_gold_given_pred -= (count / n) * std::log(count / t.predicted[cell.second]);
        h_pred_given_gold -= (count / n) * std::log(count / t.gold[cell.first]);
    }

    VMeasure out;
    out.homogeneity = h_gold == 0.0 ? 1.0 : 1.0 - h_gold_given_pred / h_gold;
    out.completeness = h_pred == 0.0 ? 1.0 : 1.0 - h_pred_given_gold / h_pred;
    out.homogeneity = std::clamp(out.homogeneity, 0.0, 1.0);
    out.completeness = std::clamp(out.completeness, 0.0, 1.0);
    const double sum = out.homogeneity + out.completeness;
    out.v = sum == 0.0 ? 0.0 : 2.0 * out.homogeneity * out.completeness / sum;
    return out;
}

PairCounts pair_counts(std::span<const std::string> gold, std::span<const std::string> predicted) {
    check_aligned(gold, predicted);
    const Contingency t = contingency(gold, predicted);
    PairCounts c;
    for (double g : t.gold) c.gold += pairs(g);
    for (double p : t.predicted) c.predicted += pairs(p);
    for (const auto& [cell, count] : t.joint) c.both += pairs(count);
    return c;
}

PairedF paired_f(const PairCounts& counts) {
    PairedF out;
    out.precision = counts.predicted > 0.0 ? counts.both / counts.predicted : 0.0;
    out.recall = counts.gold > 0.0 ? counts.both / counts.gold : 0.0;
    if (counts.predicted > 0.0 && counts.gold > 0.0 && out.precision + out.recall > 0.0)
        out.f = 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

PairedF paired_fscore(std::span<const std::string> gold, std::span<const std::string> predicted) {
    return paired_f(pair_counts(gold, predicted));
}

PearsonResult pearson_with_p(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw InvalidArgument("correlation inputs differ in length: " + std::to_string(x.size()) + " vs " +
                              std::to_string(y.size()));
    const std::size_t m = x.size();
    if (m < 3) throw InvalidArgument("correlation needs at least 3 samples, got " + std::to_string(m));

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw InvalidArgument("correlation of a constant sequence is undefined");

    PearsonResult out;
    out.samples = m;
    out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(m - 2);
    const double one_minus_r2 = 1.0 - out.r * out.r;
    if (one_minus_r2 <= 0.0) {
        out.p = 0.0;
    } else {
        const double t = std::abs(out.r) * std::sqrt(df / one_minus_r2);
        boost::math::students_t dist(df);
        out.p = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
    }
    return out;
}

KeyMismatch::KeyMismatch(std::vector<std::string> only_solution, std::vector<std::string> only_gold)
    : Error("solution and gold keys cover different instances (" + std::to_string(only_solution.size()) +
            " only in solution, " + std::to_string(only_gold.size()) + " only in gold)"),
      only_solution_(std::move(only_solution)),
      only_gold_(std::move(only_gold)) {}

ScoreReport score_keys(const std::vector<KeyEntry>& solution, const std::vector<KeyEntry>& gold) {
    std::map<std::string, const KeyEntry*> sol_by_id, gold_by_id;
    for (const auto& e : solution) sol_by_id.emplace(e.id, &e);
    for (const auto& e : gold) gold_by_id.emplace(e.id, &e);

    std::vector<std::string> only_sol, only_gold;
    for (const auto& [id, _] : sol_by_id) {
        if (!gold_by_id.contains(id)) only_sol.push_back(id);
    }
    for (const auto& [id, _] : gold_by_id) {
        if (!sol_by_id.contains(id)) only_gold.push_back(id);
    }
    if (!only_sol.empty() || !only_gold.empty()) throw KeyMismatch(std::move(only_sol), std::move(only_gold));
    if (gold.empty()) throw InvalidArgument("cannot score empty keys");

    // target -> (gold labels, predicted labels), aligned.
    std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> groups;
    std::vector<std::string> all_gold, all_pred;
    for (const auto& [id, g] : gold_by_id) {
        const KeyEntry* s = sol_by_id.at(id);
        if (s->target != g->target)
            throw InvalidArgument("instance '" + id + "' has target '" + s->target + "' in the solution but '" +
                                  g->target + "' in the gold key");
        auto& grp = groups[g->target];
        grp.first.push_back(g->label);
        grp.second.push_back(s->label);
        all_gold.push_back(g->target + "\x1f" + g->label);
        all_pred.push_back(g->target + "\x1f" + s->label);
    }

    ScoreReport report;
    report.weighted.target = "ALL.weighted";
    report.global.target = "ALL.global";
    PairCounts pooled;
    double total = 0.0;
    for (const auto& [target, labels] : groups) {
        ScoreRow row;
        row.target = target;
        row.instances = labels.first.size();
        const VMeasure v = v_measure(labels.first, labels.second);
        const PairCounts pc = pair_counts(labels.first, labels.second);
        const PairedF f = paired_f(pc);
        row.v_measure = v.v;
        row.homogeneity = v.homogeneity;
        row.completeness = v.completeness;
        row.f_score = f.f;
        row.precision = f.precision;
        row.recall = f.recall;
        row.product = row.v_measure * row.f_score;

        const double w = static_cast<double>(row.instances);
        total += w;
        report.weighted.f_score += w * row.f_score;
        report.weighted.precision += w * row.precision;
        report.weighted.recall += w * row.recall;
        report.weighted.v_measure += w * row.v_measure;
        report.weighted.homogeneity += w * row.homogeneity;
        report.weighted.completeness += w * row.completeness;
        pooled.predicted += pc.predicted;
        pooled.gold += pc.gold;
        pooled.both += pc.both;
        report.per_target.push_back(std::move(row));
    }

    auto& wt = report.weighted;
    wt.instances = static_cast<std::size_t>(total);
    wt.f_score /= total;
    wt.precision /= total;
    wt.recall /= total;
    wt.v_measure /= total;
    wt.homogeneity /= total;
    wt.completeness /= total;
    wt.product = wt.v_measure * wt.f_score;

    auto& gl = report.global;
    gl.instances = all_gold.size();
    const VMeasure gv = v_measure(all_gold, all_pred);
    const PairedF gf = paired_f(pooled);
    gl.v_measure = gv.v;
    gl.homogeneity = gv.homogeneity;
    gl.completeness = gv.completeness;
    gl.f_score = gf.f;
    gl.precision = gf.precision;
    gl.recall = gf.recall;
    gl.product = gl.v_measure * gl.f_score;
    return report;
}

void write_score_csv(std::ostream& out, const ScoreReport& report) {
    out << "target,instances,f_score,precision,recall,v_measure,homogeneity,completeness,product\n";
    char buf[256];
    auto row = [&](const ScoreRow& r) {
        std::snprintf(buf, sizeof buf, ",%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.instances, r.f_score,
                      r.precision, r.recall, r.v_measure, r.homogeneity, r.completeness, r.product);
        out << r.target << buf;
    };
    for (const auto& r : report.per_target) row(r);
    row(report.weighted);
    row(report.global);
}

}  // namespace tps
