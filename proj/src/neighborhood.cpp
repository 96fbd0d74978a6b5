#include "tps/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "tps/error.hpp"
#include "tps/kernels.hpp"

namespace tps {

namespace {

void check_size(const EmbeddingSet& e, std::size_t n) {
    if (n == 0) throw InvalidArgument("neighborhood size must be at least 1");
    if (e.size() == 0 || n > e.size() - 1)
        throw InvalidArgument("neighborhood size " + std::to_string(n) + " exceeds vocabulary size minus one (" +
                              std::to_string(e.size() == 0 ? 0 : e.size() - 1) + ")");
}

NeighborhoodCloud make_cloud(const EmbeddingSet& e, std::size_t center, std::span<const std::size_t> rows) {
    NeighborhoodCloud cloud;
    cloud.center = e.word(center);
    cloud.points = PointCloud(e.dim());
    cloud.requested = rows.size();
    for (std::size_t r : rows) {
        cloud.words.push_back(e.word(r));
        cloud.indices.push_back(r);
        cloud.points.push_back(e.row(r));
    }
    return cloud;
}

}  // namespace

std::vector<std::size_t> rank_neighbors(const EmbeddingSet& e, std::size_t center, std::size_t count) {
    const std::size_t n = e.size();
    std::vector<double> sims(n);
    kernels::parallel::dot_rows(e.values(), e.row(center), sims);

    std::vector<std::size_t> order;
    order.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != center) order.push_back(i);
    }
    count = std::min(count, order.size());
    auto closer = [&](std::size_t a, std::size_t b) { return sims[a] > sims[b] || (sims[a] == sims[b] && a < b); };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(), closer);
    order.resize(count);
    return order;
}

NeighborhoodCloud punctured_neighborhood(const EmbeddingSet& e, const std::string& w, std::size_t n) {
    const std::size_t center = e.index_of(w);
    check_size(e, n);
    return make_cloud(e, center, rank_neighbors(e, center, n));
}

NeighborhoodCloud normalize_cloud(const NeighborhoodCloud& cloud, std::span<const double> center_vector) {
    if (cloud.normalized) throw InvalidArgument("cloud of '" + cloud.center + "' is already normalized");
    NeighborhoodCloud out;
    out.center = cloud.center;
    out.points = PointCloud(cloud.points.dim());
    out.normalized = true;
    out.coincident_skipped = cloud.coincident_skipped;
    out.exhausted = cloud.exhausted;
    out.requested = cloud.requested;

    std::vector<double> diff(cloud.points.dim());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto v = cloud.points.row(i);
        for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = v[k] - center_vector[k];
        const double norm = std::sqrt(kernels::dot(diff, diff));
        if (norm < kCoincidentDistance) {
            ++out.coincident_skipped;
            continue;
        }
        for (double& x : diff) x /= norm;
        out.points.push_back(diff);
        out.words.push_back(cloud.words[i]);
        out.indices.push_back(cloud.indices[i]);
    }
    return out;
}

NeighborhoodCloud normalized_punctured_neighborhood(const EmbeddingSet& e, const std::string& w, std::size_t n) {
    const std::size_t center = e.index_of(w);
    check_size(e, n);
    const std::size_t available = e.size() - 1;

    // Coincident neighbors are rare, so rank n first and widen only on demand.
    std::size_t fetch = n;
    for (;;) {
        auto ranked = rank_neighbors(e, center, fetch);
        NeighborhoodCloud cloud = normalize_cloud(make_cloud(e, center, ranked), e.row(center));
        if (cloud.size() >= n || ranked.size() == available) {
            if (cloud.size() > n) {
                const auto last = std::find(ranked.begin(), ranked.end(), cloud.indices[n - 1]);
                cloud.coincident_skipped = static_cast<std::size_t>(last - ranked.begin()) + 1 - n;
                cloud.points = PointCloud(e.dim(), std::vector<double>(cloud.points.values().begin(),
                                                                       cloud.points.values().begin() +
                                                                           static_cast<std::ptrdiff_t>(n * e.dim())));
                cloud.words.resize(n);
                cloud.indices.resize(n);
            }
            cloud.requested = n;
            cloud.exhausted = cloud.size() < n;
            return cloud;
        }
        fetch = std::min(available, fetch + std::max(n - cloud.size(), fetch));
    }
}

void write_cloud_csv(std::ostream& out, const NeighborhoodCloud& cloud) {
    const std::size_t d = cloud.points.dim();
    for (std::size_t k = 0; k < d; ++k) out << (k ? "," : "") << 'x' << (k + 1);
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.points.row(i);
        for (std::size_t k = 0; k < d; ++k) {
            std::snprintf(buf, sizeof buf, "%.9g", p[k]);
            out << (k ? "," : "") << buf;
        }
        out << '\n';
    }
}

}  // namespace tps
