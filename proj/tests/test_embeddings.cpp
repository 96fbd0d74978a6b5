#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "tps/embeddings.hpp"
#include "tps/error.hpp"

using namespace tps;

namespace {

EmbeddingSet parse(const std::string& text) {
    std::istringstream in(text);
    return parse_vec(in, "test.vec");
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("load .vec preserves order and dimension") {
    auto e = parse("2 3\na 1 0 0\nb 0 1 0\n");
    CHECK(e.size() == 2);
    CHECK(e.dim() == 3);
    CHECK(e.word(0) == "a");
    CHECK(e.word(1) == "b");
    CHECK(e.row(1)[1] == 1.0);
    CHECK(e.index_of("b") == 1);
    CHECK_THROWS_AS(e.index_of("zzz"), OutOfVocabulary);
}

TEST_CASE("malformed .vec input is reported with its line") {
    CHECK(error_line("1 3\na 1 0\n") == 2);
    CHECK(error_line("2 2\na 1 0\na 0 1\n") == 3);
    CHECK(error_line("x 2\n") == 1);
    CHECK(error_line("1\n") == 1);
    CHECK(error_line("2 2\na 1 0\nb 0 nan\n") == 3);
    CHECK(error_line("2 2\na 1 0\nb 0 inf\n") == 3);
    CHECK(error_line("1 2\na 1 zz\n") == 2);
    CHECK(error_line("2 2\na 1 0\n") == 3);
    CHECK(error_line("1 2\na 1 0\nb 0 1\n") == 3);
    CHECK_THROWS_WITH(parse("2 1\na 1\na 2\n"), doctest::Contains("duplicate word 'a'"));
}

TEST_CASE("l2_normalize_all") {
    auto e = l2_normalize_all(parse("2 2\nx 3 4\ny 1 0\n"));
    CHECK(e.row(0)[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(e.row(0)[1] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(e.row(1)[0] == 1.0);
    CHECK(e.row(1)[1] == 0.0);
    CHECK(e.word(0) == "x");
    CHECK_THROWS_WITH(l2_normalize_all(parse("1 2\nzero 0 0\n")), doctest::Contains("'zero'"));
}

TEST_CASE("l2_normalize_all is idempotent and yields unit rows") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 5.0);
    std::vector<std::string> words;
    std::vector<double> values;
    for (int i = 0; i < 200; ++i) {
        words.push_back("w" + std::to_string(i));
        for (int k = 0; k < 7; ++k) values.push_back(g(rng));
    }
    auto once = l2_normalize_all(EmbeddingSet(words, values, 7));
    auto twice = l2_normalize_all(once);
    for (std::size_t i = 0; i < once.size(); ++i) {
        double sq = 0.0;
        for (double v : once.row(i)) sq += v * v;
        CHECK(std::abs(std::sqrt(sq) - 1.0) < 1e-6);
        for (std::size_t k = 0; k < 7; ++k) CHECK(std::abs(once.row(i)[k] - twice.row(i)[k]) < 1e-12);
    }
}

TEST_CASE("write then load round-trips at 9 significant digits") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<std::string> words;
    std::vector<double> values;
    for (int i = 0; i < 50; ++i) {
        words.push_back("tok" + std::to_string(i));
        for (int k = 0; k < 5; ++k) values.push_back(u(rng));
    }
    EmbeddingSet e(words, values, 5);
    std::ostringstream first;
    write_vec(first, e);
    auto back = parse(first.str());
    std::ostringstream second;
    write_vec(second, back);
    CHECK(first.str() == second.str());
    for (std::size_t i = 0; i < values.size(); ++i)
        CHECK(std::abs(back.values()[i] - values[i]) <= 1e-8 * std::abs(values[i]));
}

TEST_CASE("tokenizer and frequency counts") {
    CHECK(tokenize("Dog, dog!") == std::vector<std::string>{"dog", "dog"});
    CHECK(tokenize("  ...  \t") .empty());
    CHECK(tokenize("don't (stop)") == std::vector<std::string>{"don't", "stop"});

    auto t = tokenize("the cat the");
    CHECK(count_frequencies(t) == CountTable{{"the", 2}, {"cat", 1}});
    CHECK(count_frequencies(std::vector<std::string>{}).empty());
    std::istringstream corpus("Dog, dog!\n");
    CHECK(count_frequencies(corpus) == CountTable{{"dog", 2}});
}

TEST_CASE("count_frequencies is additive over concatenation") {
    std::mt19937_64 rng(5);
    const std::vector<std::string> vocab{"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::string> s1, s2;
        for (int i = 0; i < 30; ++i) s1.push_back(vocab[rng() % vocab.size()]);
        for (int i = 0; i < 17; ++i) s2.push_back(vocab[rng() % vocab.size()]);
        auto c1 = count_frequencies(s1);
        auto c2 = count_frequencies(s2);
        auto joined = s1;
        joined.insert(joined.end(), s2.begin(), s2.end());
        auto sum = c1;
        for (const auto& [w, c] : c2) sum[w] += c;
        CHECK(count_frequencies(joined) == sum);
    }
}

TEST_CASE("count tables") {
    std::istringstream ok("house\t14\nsniff\t3\n");
    CHECK(parse_count_table(ok) == CountTable{{"house", 14}, {"sniff", 3}});
    std::istringstream empty("");
    CHECK(parse_count_table(empty).empty());
    for (const char* bad : {"x\t-1\n", "x\t1.5\n", "x 3\n", "x\t\n", "x\t3\ny\t2\nx\t1\n", "\t4\n"}) {
        std::istringstream in(bad);
        CHECK_THROWS_AS(parse_count_table(in), ParseError);
    }
}
