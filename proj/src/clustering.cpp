#include "tps/clustering.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <random>

#include "tps/error.hpp"
#include "tps/kernels.hpp"

namespace tps {

Clustering dbscan(const PointCloud& points, const DbscanParams& params) {
    if (points.empty()) throw InvalidArgument("dbscan on an empty point set");
    if (!(params.eps > 0.0)) throw InvalidArgument("dbscan eps must be positive");
    if (params.min_pts < 1) throw InvalidArgument("dbscan min_pts must be at least 1");

    const std::size_t m = points.size();
    const auto neighbors = kernels::parallel::cosine_radius_neighbors(points, params.eps);
    std::vector<char> core(m);
    for (std::size_t i = 0; i < m; ++i) core[i] = neighbors[i].size() >= static_cast<std::size_t>(params.min_pts);

    Clustering out;
    out.labels.assign(m, kNoise);
    std::vector<std::uint32_t> stack;
    for (std::size_t seed = 0; seed < m; ++seed) {
        if (!core[seed] || out.labels[seed] != kNoise) continue;
        const int id = out.k++;
        out.labels[seed] = id;
        stack.assign(1, static_cast<std::uint32_t>(seed));
        while (!stack.empty()) {
            const std::uint32_t p = stack.back();
            stack.pop_back();
            for (std::uint32_t q : neighbors[p]) {
                if (core[q] && out.labels[q] == kNoise) {
                    out.labels[q] = id;
                    stack.push_back(q);
                }
            }
        }
    }
    // Neighbor lists are index-sorted, so the first core neighbor is the lowest.
    for (std::size_t i = 0; i < m; ++i) {
        if (core[i]) continue;
        for (std::uint32_t q : neighbors[i]) {
            if (core[q]) {
                out.labels[i] = out.labels[q];
                break;
            }
        }
    }
    return out;
}

namespace {

PointCloud farthest_first(const PointCloud& points, int k, std::uint64_t seed) {
    const std::size_t m = points.size();
    std::mt19937_64 rng(seed);
    std::size_t next = static_cast<std::size_t>(rng() % m);

    PointCloud centers(points.dim());
    std::vector<double> closest(m, std::numeric_limits<double>::infinity());
    for (int c = 0; c < k; ++c) {
        centers.push_back(points.row(next));
        double best = -1.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < m; ++i) {
            closest[i] = std::min(closest[i], kernels::squared_distance(points.row(i), points.row(next)));
            if (closest[i] > best) {
                best = closest[i];
                arg = i;
            }
        }
        next = arg;
    }
    return centers;
}

}  // namespace

KMeansResult kmeans_detailed(const PointCloud& points, int k, std::uint64_t seed) {
    const std::size_t m = points.size();
    if (k < 1 || static_cast<std::size_t>(k) > m)
        throw InvalidArgument("k = " + std::to_string(k) + " outside [1, " + std::to_string(m) + "]");

    const std::size_t d = points.dim();
    const auto kk = static_cast<std::size_t>(k);
    KMeansResult result;
    result.centroids = farthest_first(points, k, seed);

    std::vector<std::uint32_t> labels(m), previous;
    std::vector<double> dist2(m);
    std::vector<std::size_t> counts(kk);
    for (int iter = 1; iter <= kKMeansMaxIterations; ++iter) {
        kernels::parallel::nearest_centroid(points, result.centroids, labels, dist2);

        std::fill(counts.begin(), counts.end(), 0);
        for (auto l : labels) ++counts[l];
        for (std::size_t c = 0; c < kk; ++c) {
            if (counts[c] != 0) continue;
            double best = -1.0;
            std::size_t arg = m;
            for (std::size_t i = 0; i < m; ++i) {
                if (counts[labels[i]] > 1 && dist2[i] > best) {
                    best = dist2[i];
                    arg = i;
                }
            }
            --counts[labels[arg]];
            labels[arg] = static_cast<std::uint32_t>(c);
            dist2[arg] = 0.0;
            counts[c] = 1;
        }

        if (labels == previous) {
            result.converged = true;
            break;
        }
        previous = labels;
        result.iterations = iter;

        std::vector<double> sums(kk * d, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            auto p = points.row(i);
            double* s = sums.data() + labels[i] * d;
            for (std::size_t j = 0; j < d; ++j) s[j] += p[j];
        }
        for (std::size_t c = 0; c < kk; ++c) {
            auto centroid = result.centroids.row(c);
            for (std::size_t j = 0; j < d; ++j) centroid[j] = sums[c * d + j] / static_cast<double>(counts[c]);
        }

        double objective = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            objective += kernels::squared_distance(points.row(i), result.centroids.row(labels[i]));
        result.objective.push_back(objective);
    }

    result.clustering.k = k;
    result.clustering.labels.assign(previous.begin(), previous.end());
    return result;
}

Clustering kmeans(const PointCloud& points, int k, std::uint64_t seed) {
    return kmeans_detailed(points, k, seed).clustering;
}

void write_clustering_csv(std::ostream& out, std::span<const std::string> words, const Clustering& c) {
    if (words.size() != c.labels.size()) throw InvalidArgument("word list and clustering differ in length");
    out << "word,cluster_id\n";
    for (std::size_t i = 0; i < words.size(); ++i) out << words[i] << ',' << c.labels[i] << '\n';
}

}  // namespace tps
