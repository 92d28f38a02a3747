#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refaudit::html {

// Minimal tag-soup scanning: enough to locate labelled containers and list
// items in article pages and pull out their visible text. Not a general
// HTML parser.

struct Element {
    std::string tag;      // lowercase element name
    std::string open_tag; // verbatim opening-tag text including <>
    std::size_t begin = 0; // content span start (after the opening tag)
    std::size_t end = 0;   // content span end (before the closing tag)
    std::size_t after = 0; // offset just past the element, for iteration
};

// First element at or after `from` whose opening tag contains `hint`
// (ASCII case-insensitive). Hints are substrings of the verbatim opening
// tag: "<li" matches a tag name, "class=\"references" an attribute.
std::optional<Element> find_element(std::string_view doc, std::string_view hint,
                                    std::size_t from = 0);

// Non-overlapping elements matching `hint` whose opening tags start inside
// [begin, end).
std::vector<Element> find_elements(std::string_view doc, std::string_view hint,
                                   std::size_t begin, std::size_t end);

// First h1–h6 at or after `from` whose text contains `word`
// (case-insensitive).
std::optional<Element> find_heading(std::string_view doc, std::string_view word,
                                    std::size_t from = 0);

// Next ol/ul/table/div/section element opening at or after `pos`.
std::optional<Element> find_list_like(std::string_view doc, std::size_t pos);

// Visible text of [begin, end): tags dropped (block tags become spaces,
// inline tags vanish), script/style contents skipped, entities decoded,
// whitespace collapsed.
std::string text_content(std::string_view doc, std::size_t begin, std::size_t end);

} // namespace refaudit::html
