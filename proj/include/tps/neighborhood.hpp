#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tps/embeddings.hpp"
#include "tps/point_cloud.hpp"

namespace tps {

/// Points closest to a center word, the center itself excluded.
struct NeighborhoodCloud {
    std::string center;
    std::vector<std::string> words;    // one per point, nearest first
    std::vector<std::size_t> indices;  // vocabulary rows of the points
    PointCloud points;
    bool normalized = false;
    // Neighbors skipped because they coincide with the center vector.
    std::size_t coincident_skipped = 0;
    // Set when the vocabulary ran out before `requested` points were found.
    bool exhausted = false;
    std::size_t requested = 0;

    std::size_t size() const noexcept { return points.size(); }
};

/// Points closer than this to the center have no direction and are skipped.
inline constexpr double kCoincidentDistance = 1e-12;

/// Vocabulary rows other than `center` ordered by descending cosine
/// similarity, ties by ascending index; at most `count` of them. `e` must be
/// L2-normalized.
std::vector<std::size_t> rank_neighbors(const EmbeddingSet& e, std::size_t center, std::size_t count);

/// The n nearest neighbors of w by cosine similarity, w excluded.
/// Requires 1 <= n <= |E| - 1 and an L2-normalized `e`.
NeighborhoodCloud punctured_neighborhood(const EmbeddingSet& e, const std::string& w, std::size_t n);

/// Replaces each point v by (v - c)/|v - c|. Points within
/// kCoincidentDistance of c are dropped and counted in coincident_skipped.
NeighborhoodCloud normalize_cloud(const NeighborhoodCloud& cloud, std::span<const double> center_vector);

/// punctured_neighborhood + normalize_cloud, pulling further neighbors to
/// replace coincident ones so the result keeps n points when the
/// vocabulary allows it.
NeighborhoodCloud normalized_punctured_neighborhood(const EmbeddingSet& e, const std::string& w, std::size_t n);

/// One point per row, columns x1..xd, 9 significant digits.
void write_cloud_csv(std::ostream& out, const NeighborhoodCloud& cloud);

}  // namespace tps
