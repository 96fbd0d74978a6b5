#include "tps/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "tps/error.hpp"

namespace tps {

std::vector<KeyEntry> parse_key(std::istream& in, const std::string& source) {
    std::vector<KeyEntry> out;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        KeyEntry e;
        std::string extra;
        if (!(fields >> e.target)) continue;
        if (!(fields >> e.id >> e.label) || (fields >> extra))
            throw ParseError(source, lineno, "expected \"target instance_id label\"");
        if (!ids.insert(e.id).second) throw ParseError(source, lineno, "duplicate instance id '" + e.id + "'");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<KeyEntry> load_key(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open key file: " + path.string());
    return parse_key(in, path.string());
}

void write_key(std::ostream& out, const std::vector<KeyEntry>& key) {
    for (const auto& e : key) out << e.target << ' ' << e.id << ' ' << e.label << '\n';
}

void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        body(out);
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw Error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

}  // namespace tps
