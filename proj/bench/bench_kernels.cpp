// Serial vs OpenMP timings for the hot kernels, plus batch TPS at corpus
// scale. Usage: bench_kernels [words] [dim] [reps]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "tps/embeddings.hpp"
#include "tps/kernels.hpp"
#include "tps/tps.hpp"

using namespace tps;
namespace k = tps::kernels;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

PointCloud unit_cloud(std::size_t m, std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    PointCloud c(d);
    std::vector<double> p(d);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (auto& x : p) {
            x = g(rng);
            s += x * x;
        }
        for (auto& x : p) x /= std::sqrt(s);
        c.push_back(p);
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t words = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 127151;
    const std::size_t dim = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 100;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
    std::printf("threads %d, %zu words x %zu dims, best of %d\n", k::max_threads(), words, dim, reps);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<double> matrix(words * dim);
    for (auto& x : matrix) x = g(rng);
    std::vector<double> query(matrix.begin(), matrix.begin() + static_cast<std::ptrdiff_t>(dim));
    std::vector<double> out(words);

    report("dot_rows", best_of(reps, [&] { k::serial::dot_rows(matrix, query, out); }),
           best_of(reps, [&] { k::parallel::dot_rows(matrix, query, out); }));

    const auto cloud = unit_cloud(2000, dim, rng);
    report("pairwise_distances (2000)", best_of(reps, [&] { (void)k::serial::pairwise_distances(cloud); }),
           best_of(reps, [&] { (void)k::parallel::pairwise_distances(cloud); }));
    report("cosine_radius_neighbors", best_of(reps, [&] { (void)k::serial::cosine_radius_neighbors(cloud, 0.9); }),
           best_of(reps, [&] { (void)k::parallel::cosine_radius_neighbors(cloud, 0.9); }));

    const auto points = unit_cloud(20000, dim, rng);
    const auto centroids = unit_cloud(100, dim, rng);
    std::vector<std::uint32_t> labels(points.size());
    std::vector<double> dist2(points.size());
    report("nearest_centroid (20000x100)",
           best_of(reps, [&] { k::serial::nearest_centroid(points, centroids, labels, dist2); }),
           best_of(reps, [&] { k::parallel::nearest_centroid(points, centroids, labels, dist2); }));

    std::vector<std::string> vocab;
    vocab.reserve(words);
    for (std::size_t i = 0; i < words; ++i) vocab.push_back("w" + std::to_string(i));
    const auto unit = l2_normalize_all(EmbeddingSet(std::move(vocab), std::move(matrix), dim));
    std::vector<std::string> targets;
    for (std::size_t i = 0; i < 100; ++i) targets.push_back("w" + std::to_string(i * (words / 100)));
    const int threads = k::max_threads();
    k::set_max_threads(1);
    const double one = best_of(1, [&] { (void)tps_batch(unit, targets, 50); });
    k::set_max_threads(threads);
    const double many = best_of(1, [&] { (void)tps_batch(unit, targets, 50); });
    report("tps_batch (100 words, n=50)", one, many);
}
