#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tps/point_cloud.hpp"

namespace tps {

inline constexpr int kNoise = -1;

/// Per-point cluster ids 0..k-1, or kNoise. Every id below k is used.
struct Clustering {
    std::vector<int> labels;
    int k = 0;
};

struct DbscanParams {
    double eps = 0.09;
    int min_pts = 2;
};

/// Density-based clustering under cosine distance 1 - <p, q> on unit
/// vectors. A point is core when at least min_pts points (itself included)
/// lie within eps. Core points within eps of each other share a cluster;
/// a non-core point within eps of a core point is a border point and joins
/// the cluster of its lowest-indexed core neighbor. Cluster ids follow the
/// lowest core index of each cluster.
Clustering dbscan(const PointCloud& points, const DbscanParams& params = {});

struct KMeansResult {
    Clustering clustering;
    PointCloud centroids;
    // Sum of squared distances to the assigned centroid after each update.
    std::vector<double> objective;
    int iterations = 0;
    bool converged = false;
};

inline constexpr int kKMeansMaxIterations = 100;

/// Lloyd's algorithm on Euclidean distance. Initial centers come from a
/// farthest-first traversal whose first center is drawn from `seed`. A
/// cluster that loses all its points takes over the point farthest from
/// its own centroid. Stops at an assignment fixpoint or after 100 rounds.
KMeansResult kmeans_detailed(const PointCloud& points, int k, std::uint64_t seed);
Clustering kmeans(const PointCloud& points, int k, std::uint64_t seed);

/// "word,cluster_id" with noise written as -1.
void write_clustering_csv(std::ostream& out, std::span<const std::string> words, const Clustering& c);

}  // namespace tps
