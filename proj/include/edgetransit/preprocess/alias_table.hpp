#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace edgetransit::preprocess {

std::string trim(std::string_view s);
std::string fold_case(std::string_view s);

/// Maps (field, raw spelling) to a canonical spelling. Lookup keys are
/// trimmed and ASCII-lowercased; canonical values come back verbatim.
/// Read-only after load.
class AliasTable {
  public:
    /// Parses CSV with header `field,raw,canonical`. Throws std::runtime_error
    /// on a bad header or malformed row.
    static AliasTable from_csv(std::string_view text);
    static AliasTable from_csv_file(const std::string& path);

    void add(std::string_view field, std::string_view raw, std::string canonical);
    std::optional<std::string> lookup(std::string_view field, std::string_view raw) const;

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

  private:
    static std::string key(std::string_view field, std::string_view raw);

    std::unordered_map<std::string, std::string> entries_;
};

}  // namespace edgetransit::preprocess
