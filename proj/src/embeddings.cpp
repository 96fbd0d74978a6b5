#include "tps/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "tps/error.hpp"

namespace tps {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_word_char(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

EmbeddingSet::EmbeddingSet(std::vector<std::string> words, std::vector<double> values, std::size_t dim)
    : words_(std::move(words)), values_(std::move(values)), dim_(dim) {
    if (dim_ == 0 && !words_.empty()) throw InvalidArgument("embedding dimension must be positive");
    if (values_.size() != words_.size() * dim_)
        throw InvalidArgument("embedding matrix has " + std::to_string(values_.size()) +
                              " values, expected " + std::to_string(words_.size() * dim_));
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (!index_.emplace(words_[i], i).second)
            throw InvalidArgument("duplicate word '" + words_[i] + "'");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw InvalidArgument("non-finite component in vector of '" + words_[i / dim_] + "'");
    }
}

std::size_t EmbeddingSet::index_of(std::string_view w) const {
    if (const std::size_t* i = find(w)) return *i;
    throw OutOfVocabulary(std::string(w));
}

const std::size_t* EmbeddingSet::find(std::string_view w) const {
    auto it = index_.find(std::string(w));
    return it == index_.end() ? nullptr : &it->second;
}

EmbeddingSet load_vec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open vector file: " + path.string());
    return parse_vec(in, path.string());
}

EmbeddingSet parse_vec(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(source, 1, "missing header \"N d\"");
    auto header = split_spaces(line);
    std::size_t n = 0;
    std::size_t dim = 0;
    if (header.size() != 2 || !parse_number(header[0], n) || !parse_number(header[1], dim) || dim == 0)
        throw ParseError(source, 1, "malformed header, expected \"N d\" with d > 0");

    std::vector<std::string> words;
    std::vector<double> values;
    words.reserve(n);
    values.reserve(n * dim);
    std::unordered_map<std::string, std::size_t> seen;
    seen.reserve(n);

    std::size_t lineno = 1;
    while (words.size() < n) {
        if (!std::getline(in, line))
            throw ParseError(source, lineno + 1,
                             "expected " + std::to_string(n) + " rows, found " + std::to_string(words.size()));
        ++lineno;
        auto fields = split_spaces(line);
        if (fields.empty()) throw ParseError(source, lineno, "empty row");
        if (fields.size() - 1 != dim)
            throw ParseError(source, lineno,
                             "row has " + std::to_string(fields.size() - 1) + " components, expected " +
                                 std::to_string(dim));
        std::string word(fields[0]);
        if (auto [it, fresh] = seen.emplace(word, lineno); !fresh)
            throw ParseError(source, lineno,
                             "duplicate word '" + word + "' (first seen on line " + std::to_string(it->second) + ")");
        for (std::size_t k = 1; k < fields.size(); ++k) {
            double v = 0.0;
            if (!parse_number(fields[k], v)) throw ParseError(source, lineno, "bad number '" + std::string(fields[k]) + "'");
            if (!std::isfinite(v)) throw ParseError(source, lineno, "non-finite number '" + std::string(fields[k]) + "'");
            values.push_back(v);
        }
        words.push_back(std::move(word));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!split_spaces(line).empty())
            throw ParseError(source, lineno, "more rows than the header's N=" + std::to_string(n));
    }
    return EmbeddingSet(std::move(words), std::move(values), dim);
}

void write_vec(std::ostream& out, const EmbeddingSet& e) {
    out << e.size() << ' ' << e.dim() << '\n';
    char buf[32];
    for (std::size_t i = 0; i < e.size(); ++i) {
        out << e.word(i);
        for (double v : e.row(i)) {
            std::snprintf(buf, sizeof buf, "%.9g", v);
            out << ' ' << buf;
        }
        out << '\n';
    }
}

EmbeddingSet l2_normalize_all(const EmbeddingSet& e) {
    std::vector<double> values(e.values().begin(), e.values().end());
    const std::size_t d = e.dim();
    for (std::size_t i = 0; i < e.size(); ++i) {
        double* row = values.data() + i * d;
        double sq = 0.0;
        for (std::size_t k = 0; k < d; ++k) sq += row[k] * row[k];
        if (sq == 0.0) throw InvalidArgument("cannot normalize zero vector of word '" + e.word(i) + "'");
        const double norm = std::sqrt(sq);
        for (std::size_t k = 0; k < d; ++k) row[k] /= norm;
    }
    return EmbeddingSet(e.words(), std::move(values), d);
}

std::string normalize_token(std::string_view token) {
    std::size_t b = 0;
    std::size_t e = token.size();
    while (b < e && !is_word_char(static_cast<unsigned char>(token[b]))) ++b;
    while (e > b && !is_word_char(static_cast<unsigned char>(token[e - 1]))) --e;
    std::string out(token.substr(b, e - b));
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    for (auto piece : split_spaces(text)) {
        auto tok = normalize_token(piece);
        if (!tok.empty()) out.push_back(std::move(tok));
    }
    return out;
}

CountTable count_frequencies(std::span<const std::string> tokens) {
    CountTable table;
    for (const auto& t : tokens) ++table[t];
    return table;
}

CountTable count_frequencies(std::istream& corpus) {
    CountTable table;
    std::string line;
    while (std::getline(corpus, line)) {
        for (auto& t : tokenize(line)) ++table[t];
    }
    return table;
}

CountTable load_count_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open count table: " + path.string());
    return parse_count_table(in, path.string());
}

CountTable parse_count_table(std::istream& in, const std::string& source) {
    CountTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos)
            throw ParseError(source, lineno, "expected \"word<TAB>count\"");
        std::string word = line.substr(0, tab);
        std::string_view count_text = std::string_view(line).substr(tab + 1);
        std::uint64_t count = 0;
        if (count_text.empty() || count_text.front() == '-' || count_text.front() == '+' ||
            !parse_number(count_text, count))
            throw ParseError(source, lineno, "count must be a nonnegative integer, got '" + std::string(count_text) + "'");
        if (!table.emplace(word, count).second) throw ParseError(source, lineno, "duplicate word '" + word + "'");
    }
    return table;
}

void write_count_table(std::ostream& out, const CountTable& table) {
    for (const auto& [word, count] : table) out << word << '\t' << count << '\n';
}

}  // namespace tps
