#include <doctest.h>

#include <random>

#include "tps/kernels.hpp"

using namespace tps;

namespace {

PointCloud random_cloud(std::size_t m, std::size_t d, std::uint64_t seed, bool unit) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    PointCloud c(d);
    std::vector<double> p(d);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (auto& x : p) {
            x = g(rng);
            s += x * x;
        }
        if (unit) {
            for (auto& x : p) x /= std::sqrt(s);
        }
        c.push_back(p);
    }
    return c;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference bit for bit") {
    for (int threads : {1, 2, 3, 8}) {
        CAPTURE(threads);
        kernels::set_max_threads(threads);
        const auto cloud = random_cloud(157, 13, 42 + threads, true);

        std::vector<double> a(cloud.size()), b(cloud.size());
        kernels::serial::dot_rows(cloud.values(), cloud.row(5), a);
        kernels::parallel::dot_rows(cloud.values(), cloud.row(5), b);
        CHECK(a == b);

        CHECK(kernels::serial::pairwise_distances(cloud) == kernels::parallel::pairwise_distances(cloud));
        CHECK(kernels::serial::cosine_radius_neighbors(cloud, 0.6) ==
              kernels::parallel::cosine_radius_neighbors(cloud, 0.6));

        const auto centroids = random_cloud(7, 13, 9, false);
        std::vector<std::uint32_t> la(cloud.size()), lb(cloud.size());
        std::vector<double> da(cloud.size()), db(cloud.size());
        kernels::serial::nearest_centroid(cloud, centroids, la, da);
        kernels::parallel::nearest_centroid(cloud, centroids, lb, db);
        CHECK(la == lb);
        CHECK(da == db);
    }
    kernels::set_max_threads(1);
}

TEST_CASE("radius neighbors include the point itself and are index-sorted") {
    const auto cloud = random_cloud(40, 3, 1, true);
    const auto adj = kernels::parallel::cosine_radius_neighbors(cloud, 0.2);
    for (std::size_t i = 0; i < adj.size(); ++i) {
        CHECK(std::is_sorted(adj[i].begin(), adj[i].end()));
        CHECK(std::find(adj[i].begin(), adj[i].end(), i) != adj[i].end());
        for (auto j : adj[i]) {
            const auto& back = adj[j];
            CHECK(std::find(back.begin(), back.end(), i) != back.end());
        }
    }
}

TEST_CASE("nearest centroid breaks ties toward the lower index") {
    PointCloud pts(1, {0.0});
    PointCloud centers(1, {-1.0, 1.0});
    std::vector<std::uint32_t> l(1);
    std::vector<double> d(1);
    kernels::parallel::nearest_centroid(pts, centers, l, d);
    CHECK(l[0] == 0);
    CHECK(d[0] == 1.0);
}
