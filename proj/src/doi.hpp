#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refaudit {

// Normalized DOI name. Stored lowercase; the directory prefix must look
// like "10." + at least four digits, followed by "/" and a suffix.
class Doi {
  public:
    // Accepts bare names, "doi:" labels and resolver URLs. Throws
    // Error(malformed_doi) when no DOI name can be found.
    static Doi parse(std::string_view raw);
    static std::optional<Doi> try_parse(std::string_view raw);

    const std::string& value() const { return value_; }
    std::string_view suffix() const;

    auto operator<=>(const Doi&) const = default;

  private:
    explicit Doi(std::string value) : value_(std::move(value)) {}
    std::string value_;
};

// Filename-safe form used by the on-disk stores.
std::string doi_filename_key(const Doi& doi);

// Scans free-form text (report pages, log lines) for DOI names, in order
// of appearance. Trailing sentence punctuation is not considered part of
// the name.
std::vector<Doi> scan_dois(std::string_view text);

} // namespace refaudit
