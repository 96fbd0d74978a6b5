#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "tps/point_cloud.hpp"

namespace tps {

struct Bar {
    double birth = 0.0;
    double death = 0.0;

    double persistence() const noexcept { return death - birth; }
    friend bool operator==(const Bar&, const Bar&) = default;
};

/// Finite bars of a persistence diagram in one homology degree. Points on
/// the diagonal are implicit.
struct PersistenceDiagram {
    int degree = 0;
    std::vector<Bar> bars;

    std::size_t size() const noexcept { return bars.size(); }
    bool empty() const noexcept { return bars.empty(); }
};

/// Scale convention: components merge at the full pairwise distance
/// (Vietoris-Rips). The union-of-balls radius convention is half of this.
inline constexpr const char* kScaleConvention = "rips";
/// The one component that never dies is left out of the diagram.
inline constexpr const char* kEssentialBarPolicy = "dropped";

/// Degree-0 diagram of a point cloud: one bar (0, e) per edge e of the
/// Euclidean minimum spanning tree, so m points give m - 1 bars. Edges are
/// processed in (length, i, j) order, which makes the result independent of
/// thread count. Throws InvalidArgument on an empty cloud.
PersistenceDiagram degree0_diagram(const PointCloud& points);

/// Same, from a precomputed symmetric m x m distance matrix.
PersistenceDiagram degree0_diagram_from_distances(const std::vector<double>& distances, std::size_t m);

/// Cost of matching every bar to the diagonal under the sup-norm:
/// sum of (death - birth) / 2.
double wasserstein_norm(const PersistenceDiagram& d);

/// 1-Wasserstein distance with sup-norm ground metric, solved exactly as an
/// assignment problem where each bar may also go to its diagonal projection.
double wasserstein_distance(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Minimum-cost perfect matching on a square row-major cost matrix.
/// Returns assignment[row] = column.
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n);

/// Header "birth,death", 9 significant digits.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d);

}  // namespace tps
