#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace tps {

/// One line of a sense key: "target instance_id label".
struct KeyEntry {
    std::string target;
    std::string id;
    std::string label;

    friend bool operator==(const KeyEntry&, const KeyEntry&) = default;
};

/// Space-separated key lines; blank lines are skipped. Duplicate instance
/// ids are an error.
std::vector<KeyEntry> parse_key(std::istream& in, const std::string& source = "<stream>");
std::vector<KeyEntry> load_key(const std::filesystem::path& path);
void write_key(std::ostream& out, const std::vector<KeyEntry>& key);

/// Writes via a sibling temporary file and renames it into place, so the
/// target either keeps its old contents or holds the complete new output.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

}  // namespace tps
