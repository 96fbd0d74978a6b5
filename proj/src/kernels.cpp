#include "tps/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdint>
#include <limits>

namespace tps::kernels {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return s;
}

namespace {

inline void nearest_one(const PointCloud& centroids, std::span<const double> p, std::uint32_t& label, double& d2) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t arg = 0;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double v = squared_distance(p, centroids.row(c));
        if (v < best) {
            best = v;
            arg = static_cast<std::uint32_t>(c);
        }
    }
    label = arg;
    d2 = best;
}

}  // namespace

namespace serial {

void dot_rows(std::span<const double> matrix, std::span<const double> query, std::span<double> out) {
    const std::size_t d = query.size();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = dot(matrix.subspan(i * d, d), query);
}

std::vector<double> pairwise_distances(const PointCloud& cloud) {
    const std::size_t m = cloud.size();
    std::vector<double> out(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double v = std::sqrt(squared_distance(cloud.row(i), cloud.row(j)));
            out[i * m + j] = v;
            out[j * m + i] = v;
        }
    }
    return out;
}

AdjacencyList cosine_radius_neighbors(const PointCloud& cloud, double eps) {
    const std::size_t m = cloud.size();
    AdjacencyList out(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || 1.0 - dot(cloud.row(i), cloud.row(j)) <= eps)
                out[i].push_back(static_cast<std::uint32_t>(j));
        }
    }
    return out;
}

void nearest_centroid(const PointCloud& points, const PointCloud& centroids,
                      std::span<std::uint32_t> labels, std::span<double> dist2) {
    for (std::size_t i = 0; i < points.size(); ++i) nearest_one(centroids, points.row(i), labels[i], dist2[i]);
}

}  // namespace serial

namespace parallel {

void dot_rows(std::span<const double> matrix, std::span<const double> query, std::span<double> out) {
    const std::size_t d = query.size();
    const auto rows = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        const auto r = static_cast<std::size_t>(i);
        out[r] = dot(matrix.subspan(r * d, d), query);
    }
}

std::vector<double> pairwise_distances(const PointCloud& cloud) {
    const std::size_t m = cloud.size();
    std::vector<double> out(m * m, 0.0);
    const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i + 1; j < m; ++j) {
            const double v = std::sqrt(squared_distance(cloud.row(i), cloud.row(j)));
            out[i * m + j] = v;
            out[j * m + i] = v;
        }
    }
    return out;
}

AdjacencyList cosine_radius_neighbors(const PointCloud& cloud, double eps) {
    const std::size_t m = cloud.size();
    AdjacencyList out(m);
    const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        auto& list = out[i];
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || 1.0 - dot(cloud.row(i), cloud.row(j)) <= eps)
                list.push_back(static_cast<std::uint32_t>(j));
        }
    }
    return out;
}

void nearest_centroid(const PointCloud& points, const PointCloud& centroids,
                      std::span<std::uint32_t> labels, std::span<double> dist2) {
    const auto m = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) {
        const auto r = static_cast<std::size_t>(i);
        nearest_one(centroids, points.row(r), labels[r], dist2[r]);
    }
}

}  // namespace parallel

void set_max_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace tps::kernels
