#include "edgetransit/preprocess/alias_table.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edgetransit/core/avl.hpp"

namespace edgetransit::preprocess {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string fold_case(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string AliasTable::key(std::string_view field, std::string_view raw) {
    return std::string(field) + '\n' + fold_case(trim(raw));
}

void AliasTable::add(std::string_view field, std::string_view raw, std::string canonical) {
    entries_[key(field, raw)] = std::move(canonical);
}

std::optional<std::string> AliasTable::lookup(std::string_view field, std::string_view raw) const {
    auto it = entries_.find(key(field, raw));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

AliasTable AliasTable::from_csv(std::string_view text) {
    AliasTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    bool saw_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = core::split_csv_line(line);
        if (!saw_header) {
            if (cells.size() != 3 || trim(cells[0]) != "field" || trim(cells[1]) != "raw" ||
                trim(cells[2]) != "canonical") {
                throw std::runtime_error("alias table: expected header field,raw,canonical");
            }
            saw_header = true;
            continue;
        }
        if (cells.size() != 3) {
            throw std::runtime_error("alias table: line " + std::to_string(line_no) +
                                     ": expected 3 cells, got " + std::to_string(cells.size()));
        }
        table.add(trim(cells[0]), cells[1], trim(cells[2]));
    }
    if (!saw_header) throw std::runtime_error("alias table: missing header");
    return table;
}

AliasTable AliasTable::from_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("alias table: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_csv(buf.str());
}

}  // namespace edgetransit::preprocess
