#include "doi.hpp"

#include <cctype>

#include "errors.hpp"
#include "textutil.hpp"

namespace refaudit {

namespace {

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

// Characters that end a DOI token when scanning free text.
bool is_boundary(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isspace(u) || c == '"' || c == '<' || c == '>' || c == '\'';
}

// Finds a DOI name starting at or after `from`; returns [begin, end) or
// npos. `end` excludes trailing sentence punctuation.
std::pair<std::size_t, std::size_t> find_doi_span(std::string_view text, std::size_t from) {
    for (std::size_t i = from; i + 3 < text.size(); ++i) {
        if (!(text[i] == '1' && text[i + 1] == '0' && text[i + 2] == '.'))
            continue;
        std::size_t p = i + 3;
        std::size_t digits = 0;
        while (p < text.size() && is_digit(text[p])) { ++p; ++digits; }
        if (digits < 4 || p >= text.size() || text[p] != '/')
            continue;
        ++p; // past '/'
        std::size_t end = p;
        while (end < text.size() && !is_boundary(text[end])) ++end;
        // Trim punctuation that belongs to the surrounding prose, not the name.
        while (end > p) {
            char c = text[end - 1];
            if (c == '.' || c == ',' || c == ';' || c == ')' || c == ']' || c == '}')
                --end;
            else
                break;
        }
        if (end == p)
            continue; // empty suffix
        return {i, end};
    }
    return {std::string_view::npos, std::string_view::npos};
}

} // namespace

Doi Doi::parse(std::string_view raw) {
    auto doi = try_parse(raw);
    if (!doi)
        raise(errc::malformed_doi, "no DOI name found in '" + trim(raw) + "'");
    return *doi;
}

std::optional<Doi> Doi::try_parse(std::string_view raw) {
    std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    for (std::string_view prefix : {"https://doi.org/", "http://doi.org/",
                                    "https://dx.doi.org/", "http://dx.doi.org/",
                                    "doi.org/", "doi:", "doi "}) {
        if (istarts_with(s, prefix)) {
            s = trim(std::string_view(s).substr(prefix.size()));
            break;
        }
    }
    auto [b, e] = find_doi_span(s, 0);
    if (b == std::string_view::npos) return std::nullopt;
    // The name must account for the whole remaining input: "not-a-doi"
    // containing a DOI-like fragment elsewhere is not a DOI value.
    if (b != 0) return std::nullopt;
    for (char c : std::string_view(s).substr(e)) {
        if (c != '.' && c != ',' && c != ';' && c != ')' && c != ']' && c != '}')
            return std::nullopt;
    }
    return Doi(to_lower(s.substr(0, e)));
}

std::string_view Doi::suffix() const {
    const auto slash = value_.find('/');
    return std::string_view(value_).substr(slash + 1);
}

std::string doi_filename_key(const Doi& doi) {
    return percent_encode(doi.value());
}

std::vector<Doi> scan_dois(std::string_view text) {
    std::vector<Doi> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto [b, e] = find_doi_span(text, pos);
        if (b == std::string_view::npos) break;
        out.push_back(Doi::parse(text.substr(b, e - b)));
        pos = e;
    }
    return out;
}

} // namespace refaudit
