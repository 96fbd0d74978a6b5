#include "tps/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <utility>

#include "tps/error.hpp"
#include "tps/kernels.hpp"

namespace tps {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned char> rank_;
};

struct Edge {
    double length;
    std::uint32_t i;
    std::uint32_t j;
};

double sup_distance(const Bar& a, const Bar& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

void check_finite(const PersistenceDiagram& d) {
    for (const Bar& b : d.bars) {
        if (!std::isfinite(b.birth) || !std::isfinite(b.death))
            throw InvalidArgument("diagram contains a non-finite bar");
    }
}

}  // namespace

PersistenceDiagram degree0_diagram(const PointCloud& points) {
    if (points.empty()) throw InvalidArgument("persistence of an empty point cloud");
    for (double v : points.values()) {
        if (!std::isfinite(v)) throw InvalidArgument("point cloud has a non-finite coordinate");
    }
    return degree0_diagram_from_distances(kernels::parallel::pairwise_distances(points), points.size());
}

PersistenceDiagram degree0_diagram_from_distances(const std::vector<double>& distances, std::size_t m) {
    if (m == 0) throw InvalidArgument("persistence of an empty point cloud");
    if (distances.size() != m * m) throw InvalidArgument("distance matrix is not m x m");

    std::vector<Edge> edges;
    edges.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j)
            edges.push_back({distances[i * m + j], static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    PersistenceDiagram diagram;
    diagram.bars.reserve(m - 1);
    DisjointSets sets(m);
    for (const Edge& e : edges) {
        if (sets.unite(e.i, e.j)) {
            diagram.bars.push_back({0.0, e.length});
            if (diagram.bars.size() == m - 1) break;
        }
    }
    return diagram;
}

double wasserstein_norm(const PersistenceDiagram& d) {
    double total = 0.0;
    for (const Bar& b : d.bars) total += b.persistence() / 2.0;
    return total;
}

std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n) {
    // Shortest augmenting path with row/column potentials (Kuhn-Munkres),
    // O(n^3). Index 0 is a sentinel column.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[col0] = 1;
            const std::size_t r = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c]) continue;
                const double reduced = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
                if (reduced < minv[c]) {
                    minv[c] = reduced;
                    way[c] = col0;
                }
                if (minv[c] < delta) {
                    delta = minv[c];
                    col1 = c;
                }
            }
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    u[match[c]] += delta;
                    v[c] -= delta;
                } else {
                    minv[c] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t c = 1; c <= n; ++c) assignment[match[c] - 1] = c - 1;
    return assignment;
}

double wasserstein_distance(const PersistenceDiagram& first, const PersistenceDiagram& second) {
    check_finite(first);
    check_finite(second);
    // Fixed argument order makes the result bitwise symmetric.
    const auto key = [](const Bar& x) { return std::pair{x.birth, x.death}; };
    const bool swap = std::ranges::lexicographical_compare(second.bars, first.bars, {}, key, key);
    const PersistenceDiagram& a = swap ? second : first;
    const PersistenceDiagram& b = swap ? first : second;
    const std::size_t p = a.size();
    const std::size_t q = b.size();
    const std::size_t n = p + q;
    if (n == 0) return 0.0;

    // Rows: bars of a, then q diagonal slots. Columns: bars of b, then p
    // diagonal slots. Diagonal slots are interchangeable, so a bar pays its
    // distance to the diagonal for any of them; slot-to-slot costs nothing.
    std::vector<double> cost(n * n, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) cost[i * n + j] = sup_distance(a.bars[i], b.bars[j]);
        for (std::size_t j = q; j < n; ++j) cost[i * n + j] = a.bars[i].persistence() / 2.0;
    }
    for (std::size_t i = p; i < n; ++i) {
        for (std::size_t j = 0; j < q; ++j) cost[i * n + j] = b.bars[j].persistence() / 2.0;
    }

    const auto assignment = solve_assignment(cost, n);
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) total += cost[r * n + assignment[r]];
    return total;
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d) {
    out << "birth,death\n";
    char buf[64];
    for (const Bar& b : d.bars) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", b.birth, b.death);
        out << buf;
    }
}

}  // namespace tps
