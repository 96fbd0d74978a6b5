#include "tps/tps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>

#include "tps/error.hpp"
#include "tps/neighborhood.hpp"

namespace tps {

TpsReport tps_score(const EmbeddingSet& e, const std::string& w, std::size_t n) {
    e.index_of(w);
    return tps_score_normalized(l2_normalize_all(e), w, n);
}

TpsReport tps_score_normalized(const EmbeddingSet& unit, const std::string& w, std::size_t n,
                               PersistenceDiagram* diagram) {
    const NeighborhoodCloud cloud = normalized_punctured_neighborhood(unit, w, n);
    TpsReport report;
    report.word = w;
    report.n = n;
    report.coincident_skipped = cloud.coincident_skipped;
    report.exhausted = cloud.exhausted;
    if (cloud.size() == 0) return report;

    PersistenceDiagram d = degree0_diagram(cloud.points);
    report.score = wasserstein_norm(d);
    report.bars_used = d.size();
    if (diagram) *diagram = std::move(d);
    return report;
}

std::vector<TpsOutcome> tps_batch(const EmbeddingSet& unit, std::span<const std::string> words, std::size_t n) {
    std::vector<TpsOutcome> out(words.size());
    const auto count = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        out[i].word = words[i];
        try {
            out[i].report = tps_score_normalized(unit, words[i], n);
        } catch (const std::exception& ex) {
            out[i].error = ex.what();
        }
    }
    return out;
}

PercentileTable::PercentileTable(std::map<std::string, double> scores) : scores_(std::move(scores)) {
    if (scores_.empty()) throw InvalidArgument("percentile table needs at least one score");
    auto [lo, hi] = std::minmax_element(scores_.begin(), scores_.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
    min_ = lo->second;
    max_ = hi->second;
}

int tps_percentile(const PercentileTable& table, const std::string& w) {
    auto it = table.scores().find(w);
    if (it == table.scores().end()) throw InvalidArgument("word '" + w + "' not in percentile table");
    if (!(table.tps_max() > table.tps_min()))
        throw InvalidArgument("degenerate percentile table: all TPS values are equal");
    const double frac = (it->second - table.tps_min()) / (table.tps_max() - table.tps_min());
    return std::clamp(static_cast<int>(std::ceil(frac * 100.0)), 0, 100);
}

int predicted_k(int percentile) {
    if (percentile < 0 || percentile > 100)
        throw InvalidArgument("percentile out of range [0, 100]: " + std::to_string(percentile));
    if (percentile <= 1) return 2;
    if (percentile < 100) return percentile + 1;
    return 100;
}

void write_tps_csv(std::ostream& out, std::span<const TpsOutcome> outcomes) {
    out << "word,n,tps\n";
    char buf[64];
    for (const auto& o : outcomes) {
        if (!o.report) continue;
        std::snprintf(buf, sizeof buf, ",%zu,%.6f\n", o.report->n, o.report->score);
        out << o.word << buf;
    }
}

std::vector<TpsRow> read_tps_csv(std::istream& in, const std::string& source) {
    std::vector<TpsRow> rows;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(source, 1, "missing header \"word,n,tps\"");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "word,n,tps") throw ParseError(source, 1, "expected header \"word,n,tps\"");
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto c2 = line.rfind(',');
        auto c1 = c2 == std::string::npos || c2 == 0 ? std::string::npos : line.rfind(',', c2 - 1);
        if (c1 == std::string::npos || c1 == 0) throw ParseError(source, lineno, "expected \"word,n,tps\"");
        TpsRow row;
        row.word = line.substr(0, c1);
        const char* nb = line.data() + c1 + 1;
        const char* ne = line.data() + c2;
        const char* tb = line.data() + c2 + 1;
        const char* te = line.data() + line.size();
        auto r1 = std::from_chars(nb, ne, row.n);
        auto r2 = std::from_chars(tb, te, row.tps);
        if (r1.ec != std::errc() || r1.ptr != ne || r2.ec != std::errc() || r2.ptr != te || !std::isfinite(row.tps))
            throw ParseError(source, lineno, "malformed row '" + line + "'");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace tps
