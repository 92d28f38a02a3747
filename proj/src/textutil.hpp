#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refaudit {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);
std::size_t ifind(std::string_view haystack, std::string_view needle);

std::vector<std::string> split(std::string_view s, char sep);
std::string collapse_whitespace(std::string_view s);

// Percent-encodes everything outside the URL-safe unreserved set.
std::string percent_encode(std::string_view s);

// Replaces combining-free Latin accented characters with their ASCII base
// letter and drops any other multi-byte sequences. Input that is plain
// ASCII passes through untouched.
std::string fold_diacritics(std::string_view utf8);

// Validates UTF-8; returns the byte offset of the first invalid sequence.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

// Minimal HTML entity decoding (named entities seen in article pages plus
// numeric character references).
std::string decode_html_entities(std::string_view s);

std::string format_thousands(long long value);

} // namespace refaudit
