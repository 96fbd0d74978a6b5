#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tps/metrics.hpp"

using namespace tps;
using Labels = std::vector<std::string>;

namespace {

Labels random_labels(std::mt19937_64& rng, std::size_t n, std::size_t alphabet, const std::string& prefix) {
    Labels out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(rng() % alphabet));
    return out;
}

Labels rename(const Labels& l, const std::string& prefix) {
    Labels out;
    for (const auto& s : l) out.push_back(prefix + s + "'");
    return out;
}

}  // namespace

TEST_CASE("V-measure reference cases") {
    auto id = v_measure(Labels{"a", "a", "b", "c"}, Labels{"0", "0", "1", "2"});
    CHECK(id.homogeneity == doctest::Approx(1.0));
    CHECK(id.completeness == doctest::Approx(1.0));
    CHECK(id.v == doctest::Approx(1.0));

    auto mfs = v_measure(Labels{"a", "a", "b", "b"}, Labels{"0", "0", "0", "0"});
    CHECK(mfs.homogeneity == 0.0);
    CHECK(mfs.completeness == 1.0);
    CHECK(mfs.v == 0.0);

    // Oracle value: h = 1, c = 1 - (ln2 / 2) / (1.5 ln2) = 2/3, V = 0.8.
    const Labels gold{"a", "a", "b", "b"}, pred{"0", "0", "1", "2"};
    const auto o = oracle::v_measure(gold, pred);
    CHECK(o.h == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(o.c == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(o.v == doctest::Approx(0.8).epsilon(1e-12));
    const auto v = v_measure(gold, pred);
    CHECK(std::abs(v.homogeneity - o.h) <= 1e-9);
    CHECK(std::abs(v.completeness - o.c) <= 1e-9);
    CHECK(std::abs(v.v - o.v) <= 1e-9);

    CHECK_THROWS_AS(v_measure(Labels{"a"}, Labels{}), InvalidArgument);
    CHECK_THROWS_AS(v_measure(Labels{}, Labels{}), InvalidArgument);
}

TEST_CASE("paired F-score reference cases") {
    auto id = paired_fscore(Labels{"a", "a", "b", "b"}, Labels{"x", "x", "y", "y"});
    CHECK(id.precision == 1.0);
    CHECK(id.recall == 1.0);
    CHECK(id.f == 1.0);

    // 6 predicted pairs, 2 of them gold pairs.
    auto one = paired_fscore(Labels{"a", "a", "b", "b"}, Labels{"0", "0", "0", "0"});
    CHECK(one.precision == doctest::Approx(2.0 / 6.0));
    CHECK(one.recall == 1.0);
    CHECK(one.f == doctest::Approx(0.5));

    auto singletons = paired_fscore(Labels{"a", "a", "b", "b"}, Labels{"0", "1", "2", "3"});
    CHECK(singletons.precision == 0.0);
    CHECK(singletons.f == 0.0);

    auto no_gold_pairs = paired_fscore(Labels{"a", "b", "c"}, Labels{"0", "0", "1"});
    CHECK(no_gold_pairs.recall == 0.0);
    CHECK(no_gold_pairs.f == 0.0);
}

TEST_CASE("metrics match the brute-force oracles on random labelings") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        const auto gold = random_labels(rng, n, 1 + rng() % 5, "g");
        const auto pred = random_labels(rng, n, 1 + rng() % 6, "p");
        const auto v = v_measure(gold, pred);
        const auto ov = oracle::v_measure(gold, pred);
        CHECK(std::abs(v.homogeneity - ov.h) <= 1e-9);
        CHECK(std::abs(v.completeness - ov.c) <= 1e-9);
        CHECK(std::abs(v.v - ov.v) <= 1e-9);
        const auto f = paired_fscore(gold, pred);
        const auto of = oracle::paired_f(gold, pred);
        CHECK(std::abs(f.precision - of.p) <= 1e-9);
        CHECK(std::abs(f.recall - of.r) <= 1e-9);
        CHECK(std::abs(f.f - of.f) <= 1e-9);
    }
}

TEST_CASE("metric symmetries") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 18;
        const auto gold = random_labels(rng, n, 1 + rng() % 4, "g");
        const auto pred = random_labels(rng, n, 1 + rng() % 4, "p");

        const auto v = v_measure(gold, pred);
        const auto relabeled = v_measure(rename(gold, "x"), rename(pred, "y"));
        CHECK(relabeled.v == doctest::Approx(v.v).epsilon(1e-12));
        CHECK(relabeled.homogeneity == doctest::Approx(v.homogeneity).epsilon(1e-12));

        const auto swapped = v_measure(pred, gold);
        CHECK(swapped.homogeneity == doctest::Approx(v.completeness).epsilon(1e-12));
        CHECK(swapped.completeness == doctest::Approx(v.homogeneity).epsilon(1e-12));
        CHECK(swapped.v == doctest::Approx(v.v).epsilon(1e-12));

        const auto f = paired_fscore(gold, pred);
        const auto fs = paired_fscore(pred, gold);
        CHECK(fs.precision == f.recall);
        CHECK(fs.recall == f.precision);
        const auto fr = paired_fscore(rename(gold, "x"), rename(pred, "y"));
        CHECK(fr.f == f.f);
    }
}

TEST_CASE("Pearson correlation") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> lin{3, 5, 7, 9};
    auto perfect = pearson_with_p(x, lin);
    CHECK(perfect.r == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(perfect.p < 1e-12);
    CHECK(pearson_with_p(x, std::vector<double>{-1, -2, -3, -4}).r == doctest::Approx(-1.0));

    const std::vector<double> y{1, 3, 2, 5};
    const auto r = pearson_with_p(x, y);
    CHECK(std::abs(r.r - oracle::pearson(x, y)) <= 1e-12);
    CHECK(r.samples == 4);
    // Two-sided p at df = 2: t = r sqrt(2 / (1 - r^2)); p = 1 - t / sqrt(2 + t^2).
    const double t = r.r * std::sqrt(2.0 / (1.0 - r.r * r.r));
    CHECK(r.p == doctest::Approx(1.0 - t / std::sqrt(2.0 + t * t)).epsilon(1e-10));

    CHECK_THROWS_AS(pearson_with_p(x, std::vector<double>{1, 1, 1, 1}), InvalidArgument);
    CHECK_THROWS_AS(pearson_with_p(x, std::vector<double>{1, 2, 3}), InvalidArgument);
    CHECK_THROWS_AS(pearson_with_p(std::vector<double>{1, 2}, std::vector<double>{2, 1}), InvalidArgument);
}

TEST_CASE("Pearson invariances") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(10), y(10);
        for (auto& v : x) v = g(rng);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.5 * x[i] + g(rng);
        const double r = pearson_with_p(x, y).r;
        std::vector<double> ax, ny;
        for (double v : x) ax.push_back(3.0 * v + 7.0);
        for (double v : y) ny.push_back(-v);
        CHECK(pearson_with_p(ax, y).r == doctest::Approx(r).epsilon(1e-12));
        CHECK(pearson_with_p(x, ny).r == doctest::Approx(-r).epsilon(1e-12));
    }
}

TEST_CASE("scoring keys per target and in aggregate") {
    std::vector<KeyEntry> gold{{"a.n", "1", "a.n.x"}, {"a.n", "2", "a.n.x"}, {"a.n", "3", "a.n.y"},
                               {"a.n", "4", "a.n.y"}, {"b.v", "5", "b.v.x"}, {"b.v", "6", "b.v.y"}};
    auto self = score_keys(gold, gold);
    CHECK(self.weighted.v_measure == doctest::Approx(1.0));
    CHECK(self.global.v_measure == doctest::Approx(1.0));
    CHECK(self.global.product == doctest::Approx(1.0));
    REQUIRE(self.per_target.size() == 2);
    // b.v has no gold pairs, so F = 0 by convention.
    CHECK(self.per_target[1].f_score == 0.0);
    CHECK(self.weighted.f_score == doctest::Approx(4.0 / 6.0));
    CHECK(self.global.f_score == doctest::Approx(1.0));

    std::vector<KeyEntry> one;
    for (const auto& e : gold) one.push_back({e.target, e.id, "c1"});
    auto mfs = score_keys(one, gold);
    CHECK(mfs.weighted.v_measure == 0.0);
    CHECK(mfs.per_target[0].precision == doctest::Approx(2.0 / 6.0));

    auto missing = gold;
    missing.pop_back();
    missing.push_back({"b.v", "99", "z"});
    try {
        score_keys(missing, gold);
        FAIL("expected mismatch");
    } catch (const KeyMismatch& e) {
        CHECK(e.only_in_solution() == std::vector<std::string>{"99"});
        CHECK(e.only_in_gold() == std::vector<std::string>{"6"});
    }

    std::ostringstream csv;
    write_score_csv(csv, self);
    const std::string text = csv.str();
    CHECK(text.rfind("target,instances,f_score,precision,recall,v_measure,homogeneity,completeness,product\n", 0) == 0);
    CHECK(text.find("\nALL.weighted,6,") != std::string::npos);
    CHECK(text.find("\nALL.global,6,") != std::string::npos);
}

TEST_CASE("key files") {
    std::istringstream in("a.n 1 a.n.1\n\nb.v 2 b.v.3\n");
    auto key = parse_key(in);
    REQUIRE(key.size() == 2);
    CHECK(key[1] == KeyEntry{"b.v", "2", "b.v.3"});
    std::ostringstream out;
    write_key(out, key);
    CHECK(out.str() == "a.n 1 a.n.1\nb.v 2 b.v.3\n");
    for (const char* bad : {"a.n 1\n", "a.n 1 x y\n", "a.n 1 x\na.n 1 y\n"}) {
        std::istringstream b(bad);
        CHECK_THROWS_AS(parse_key(b), ParseError);
    }
}
