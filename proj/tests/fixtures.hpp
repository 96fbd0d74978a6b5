#pragma once

// Synthetic embeddings with planted structure, shared by unit and
// acceptance tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tps/embeddings.hpp"
#include "tps/wsi.hpp"

namespace fixtures {

inline void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
}

/// Center word "w" = e0 whose `points` nearest neighbors leave it in
/// directions drawn from k caps around e1..ek (spread `spread`), plus
/// `distractors` words pointing away from w. Requires k <= dim - 2.
inline tps::EmbeddingSet cap_embedding(int k, int points, std::size_t dim, std::mt19937_64& rng,
                                       double spread = 0.05, int distractors = 100) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> radius(0.05, 0.15);
    std::vector<std::string> words{"w"};
    std::vector<double> values(dim, 0.0);
    values[0] = 1.0;
    for (int i = 0; i < points; ++i) {
        const int cap = i % k;
        std::vector<double> u(dim, 0.0);
        for (std::size_t j = 1; j < dim; ++j) u[j] = spread * gauss(rng);
        u[static_cast<std::size_t>(cap) + 1] += 1.0;
        normalize(u);
        // Distinct offsets keep the cosine ranking free of ties.
        const double r = radius(rng);
        std::vector<double> v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = (j == 0 ? 1.0 : 0.0) + r * u[j];
        normalize(v);
        words.push_back("p" + std::to_string(i));
        values.insert(values.end(), v.begin(), v.end());
    }
    for (int i = 0; i < distractors; ++i) {
        std::vector<double> v(dim);
        for (double& x : v) x = gauss(rng);
        v[0] = -std::abs(v[0]) - 0.5;
        normalize(v);
        words.push_back("z" + std::to_string(i));
        values.insert(values.end(), v.begin(), v.end());
    }
    return tps::EmbeddingSet(std::move(words), std::move(values), dim);
}

/// Targets each with two planted sense bundles, plus unrelated filler words.
struct PlantedWsi {
    tps::EmbeddingSet embedding;
    std::vector<tps::Instance> instances;
    std::vector<tps::KeyEntry> gold;
    std::size_t n = 0;  // neighborhood size that covers both bundles exactly
};

inline PlantedWsi planted_two_sense(std::uint64_t seed = 7, int targets = 2, int bundle = 8,
                                    int instances_per_sense = 10) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t noise_dims = 8;
    const std::size_t dim = 2 * static_cast<std::size_t>(targets) + noise_dims;
    const std::size_t noise0 = dim - noise_dims;
    const std::vector<std::string> lemmas{"bank", "bass", "crane", "spring", "match"};

    std::vector<std::string> words;
    std::vector<double> values;
    auto add = [&](const std::string& w, std::vector<double> v) {
        normalize(v);
        words.push_back(w);
        values.insert(values.end(), v.begin(), v.end());
    };

    PlantedWsi out;
    out.n = 2 * static_cast<std::size_t>(bundle);
    std::vector<std::vector<std::string>> vocab;  // per (target, sense)
    for (int t = 0; t < targets; ++t) {
        const std::size_t a = 2 * static_cast<std::size_t>(t), b = a + 1;
        std::vector<double> center(dim, 0.0);
        center[a] = center[b] = 1.0;
        add(lemmas[static_cast<std::size_t>(t)], center);
        for (std::size_t s : {a, b}) {
            vocab.emplace_back();
            for (int i = 0; i < bundle; ++i) {
                std::vector<double> v(dim, 0.0);
                v[s] = 1.0;
                for (std::size_t j = noise0; j < dim; ++j) v[j] = 0.04 * gauss(rng);
                const std::string w = lemmas[static_cast<std::size_t>(t)] + (s == a ? "_a" : "_b") + std::to_string(i);
                vocab.back().push_back(w);
                add(w, v);
            }
        }
    }
    const std::vector<std::string> filler{"the", "of", "and", "a", "in", "to", "was", "it"};
    for (const auto& f : filler) {
        std::vector<double> v(dim, 0.0);
        for (std::size_t j = noise0; j < dim; ++j) v[j] = gauss(rng);
        add(f, v);
    }
    out.embedding = tps::EmbeddingSet(std::move(words), std::move(values), dim);

    std::uniform_int_distribution<int> pick_word(0, bundle - 1);
    std::uniform_int_distribution<int> pick_filler(0, static_cast<int>(filler.size()) - 1);
    for (int t = 0; t < targets; ++t) {
        const std::string target = lemmas[static_cast<std::size_t>(t)] + ".n";
        for (int s = 0; s < 2; ++s) {
            const auto& bundle_words = vocab[static_cast<std::size_t>(2 * t + s)];
            for (int i = 0; i < instances_per_sense; ++i) {
                tps::Instance inst;
                inst.target = target;
                inst.id = target + "." + std::to_string(s * instances_per_sense + i + 1);
                for (int j = 0; j < 3; ++j) {
                    inst.tokens.push_back(filler[static_cast<std::size_t>(pick_filler(rng))]);
                    inst.tokens.push_back(bundle_words[static_cast<std::size_t>(pick_word(rng))]);
                }
                inst.tokens.push_back(lemmas[static_cast<std::size_t>(t)]);
                out.gold.push_back({target, inst.id, target + ".g" + std::to_string(s)});
                out.instances.push_back(std::move(inst));
            }
        }
    }
    return out;
}

}  // namespace fixtures
