#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tps {

/// Vocabulary plus a dense row-major N x d matrix of word vectors.
///
/// Words are unique and every component is finite; both are checked on
/// construction. The set is immutable afterwards, so concurrent readers
/// need no synchronization.
class EmbeddingSet {
public:
    EmbeddingSet() = default;
    EmbeddingSet(std::vector<std::string> words, std::vector<double> values, std::size_t dim);

    std::size_t size() const noexcept { return words_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return words_.empty(); }

    const std::vector<std::string>& words() const noexcept { return words_; }
    const std::string& word(std::size_t i) const { return words_.at(i); }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }
    std::span<const double> values() const noexcept { return values_; }

    bool contains(std::string_view w) const { return index_.contains(std::string(w)); }
    /// Throws OutOfVocabulary.
    std::size_t index_of(std::string_view w) const;
    const std::size_t* find(std::string_view w) const;

private:
    std::vector<std::string> words_;
    std::vector<double> values_;
    std::size_t dim_ = 0;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Parses the fastText text format: header "N d", then N lines "word v1 ... vd".
EmbeddingSet load_vec_file(const std::filesystem::path& path);
EmbeddingSet parse_vec(std::istream& in, const std::string& source = "<stream>");

/// Writes the .vec text format with 9 significant digits per component.
void write_vec(std::ostream& out, const EmbeddingSet& e);

/// Scales every row to unit L2 norm. Throws InvalidArgument naming the word
/// if a row is the zero vector.
EmbeddingSet l2_normalize_all(const EmbeddingSet& e);

/// Word -> nonnegative count, ordered by word for deterministic output.
using CountTable = std::map<std::string, std::uint64_t>;

/// Lowercases, splits on whitespace and strips leading/trailing
/// non-alphanumeric characters; tokens that end up empty are dropped.
/// Bytes >= 0x80 count as alphanumeric so UTF-8 sequences survive intact.
std::vector<std::string> tokenize(std::string_view text);

/// Normalizes a single token by the same rules as tokenize(); may return "".
std::string normalize_token(std::string_view token);

CountTable count_frequencies(std::span<const std::string> tokens);
CountTable count_frequencies(std::istream& corpus);

/// Reads "word<TAB>count" lines. Blank lines are not allowed.
CountTable load_count_table(const std::filesystem::path& path);
CountTable parse_count_table(std::istream& in, const std::string& source = "<stream>");
void write_count_table(std::ostream& out, const CountTable& table);

}  // namespace tps
