#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version (used by the
// library) and a serial reference with identical per-element arithmetic, so
// results are bitwise equal regardless of thread count. Tests and the
// benchmark compare the two.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tps/point_cloud.hpp"

namespace tps::kernels {

/// Neighbor lists, each sorted by ascending point index.
using AdjacencyList = std::vector<std::vector<std::uint32_t>>;

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

namespace serial {

/// out[i] = <row i of matrix, query>; matrix is rows x query.size().
void dot_rows(std::span<const double> matrix, std::span<const double> query, std::span<double> out);

/// Full m x m matrix of Euclidean distances.
std::vector<double> pairwise_distances(const PointCloud& cloud);

/// For each point, all j with 1 - <p_i, p_j> <= eps (including i itself).
AdjacencyList cosine_radius_neighbors(const PointCloud& cloud, double eps);

/// labels[i] = index of the nearest centroid (ties to the lowest index);
/// dist2[i] = squared distance to it.
void nearest_centroid(const PointCloud& points, const PointCloud& centroids,
                      std::span<std::uint32_t> labels, std::span<double> dist2);

}  // namespace serial

namespace parallel {

void dot_rows(std::span<const double> matrix, std::span<const double> query, std::span<double> out);
std::vector<double> pairwise_distances(const PointCloud& cloud);
AdjacencyList cosine_radius_neighbors(const PointCloud& cloud, double eps);
void nearest_centroid(const PointCloud& points, const PointCloud& centroids,
                      std::span<std::uint32_t> labels, std::span<double> dist2);

}  // namespace parallel

/// Caps the OpenMP worker count; 0 leaves the runtime default.
void set_max_threads(int threads);
int max_threads();

}  // namespace tps::kernels
