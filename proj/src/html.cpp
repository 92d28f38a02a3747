#include "html.hpp"

#include <array>
#include <cctype>

#include "textutil.hpp"

namespace refaudit::html {

namespace {

struct Tag {
    std::size_t begin = 0; // offset of '<'
    std::size_t end = 0;   // offset just past '>'
    std::string name;      // lowercase; empty for comments/doctype
    bool closing = false;
    bool self_closing = false;
};

bool is_void_tag(const std::string& name) {
    static const std::array<const char*, 13> kVoid = {"area",  "base", "br",    "col",  "embed",
                                                      "hr",    "img",  "input", "link", "meta",
                                                      "param", "source", "wbr"};
    for (const char* v : kVoid)
        if (name == v) return true;
    return false;
}

// Tags whose own open tag implies closing a previous sibling of the same
// name (HTML optional end tags relevant to list scraping).
bool implies_sibling_close(const std::string& name) {
    return name == "li" || name == "p" || name == "tr" || name == "td" || name == "option";
}

bool is_inline_tag(const std::string& name) {
    static const std::array<const char*, 12> kInline = {"a",    "b",   "i",     "em",  "strong",
                                                        "span", "sub", "sup",   "u",   "small",
                                                        "abbr", "cite"};
    for (const char* v : kInline)
        if (name == v) return true;
    return false;
}

// Next tag at or after `pos`; comments and doctype return with empty name.
std::optional<Tag> next_tag(std::string_view doc, std::size_t pos) {
    while (true) {
        auto lt = doc.find('<', pos);
        if (lt == std::string_view::npos) return std::nullopt;
        Tag t;
        t.begin = lt;
        if (doc.substr(lt).starts_with("<!--")) {
            auto close = doc.find("-->", lt + 4);
            t.end = close == std::string_view::npos ? doc.size() : close + 3;
            return t;
        }
        std::size_t p = lt + 1;
        if (p < doc.size() && doc[p] == '/') {
            t.closing = true;
            ++p;
        }
        std::size_t name_start = p;
        while (p < doc.size() &&
               (std::isalnum(static_cast<unsigned char>(doc[p])) || doc[p] == '!'))
            ++p;
        t.name = to_lower(doc.substr(name_start, p - name_start));
        if (!t.name.empty() && t.name[0] == '!') t.name.clear(); // doctype etc.
        auto gt = doc.find('>', p);
        t.end = gt == std::string_view::npos ? doc.size() : gt + 1;
        if (gt != std::string_view::npos && gt > lt && doc[gt - 1] == '/') t.self_closing = true;
        if (t.name.empty() && !t.closing && gt == std::string_view::npos) {
            pos = lt + 1; // stray '<' in text
            continue;
        }
        return t;
    }
}

// Content end + element end for an opening tag; handles void elements,
// optional end tags and raw-text elements (script/style).
std::pair<std::size_t, std::size_t> close_of(std::string_view doc, const Tag& open) {
    if (open.self_closing || is_void_tag(open.name)) return {open.end, open.end};
    if (open.name == "script" || open.name == "style") {
        std::string closer = "</" + open.name;
        auto at = ifind(doc.substr(open.end), closer);
        if (at == std::string_view::npos) return {doc.size(), doc.size()};
        auto gt = doc.find('>', open.end + at);
        return {open.end + at, gt == std::string_view::npos ? doc.size() : gt + 1};
    }
    std::size_t depth = 0;
    std::size_t pos = open.end;
    while (auto t = next_tag(doc, pos)) {
        if (t->name == open.name) {
            if (t->closing) {
                if (depth == 0) return {t->begin, t->end};
                --depth;
            } else if (!t->self_closing && !is_void_tag(t->name)) {
                if (implies_sibling_close(open.name) && depth == 0)
                    return {t->begin, t->begin}; // sibling implies our close
                ++depth;
            }
        } else if (t->closing && depth == 0 && implies_sibling_close(open.name) &&
                   (t->name == "ol" || t->name == "ul" || t->name == "table")) {
            return {t->begin, t->begin}; // parent closed before we did
        }
        pos = t->end;
    }
    return {doc.size(), doc.size()};
}

Element element_from(std::string_view doc, const Tag& open) {
    Element e;
    e.tag = open.name;
    e.open_tag = std::string(doc.substr(open.begin, open.end - open.begin));
    auto [content_end, elem_end] = close_of(doc, open);
    e.begin = open.end;
    e.end = content_end;
    e.after = elem_end;
    return e;
}

} // namespace

std::optional<Element> find_element(std::string_view doc, std::string_view hint,
                                    std::size_t from) {
    std::size_t pos = from;
    while (auto t = next_tag(doc, pos)) {
        pos = t->end;
        if (t->name.empty() || t->closing) continue;
        std::string_view open_text = doc.substr(t->begin, t->end - t->begin);
        if (ifind(open_text, hint) != std::string_view::npos) return element_from(doc, *t);
    }
    return std::nullopt;
}

std::vector<Element> find_elements(std::string_view doc, std::string_view hint,
                                   std::size_t begin, std::size_t end) {
    std::vector<Element> out;
    std::size_t pos = begin;
    while (pos < end) {
        auto e = find_element(doc, hint, pos);
        if (!e) break;
        // The opening tag sits at e.begin - open_tag length.
        std::size_t open_at = e->begin - e->open_tag.size();
        if (open_at >= end) break;
        out.push_back(*e);
        pos = std::max(e->after, pos + 1);
    }
    return out;
}

std::optional<Element> find_heading(std::string_view doc, std::string_view word,
                                    std::size_t from) {
    std::size_t pos = from;
    while (auto t = next_tag(doc, pos)) {
        pos = t->end;
        if (t->closing || t->name.size() != 2 || t->name[0] != 'h') continue;
        if (t->name[1] < '1' || t->name[1] > '6') continue;
        Element e = element_from(doc, *t);
        if (ifind(text_content(doc, e.begin, e.end), word) != std::string_view::npos) return e;
    }
    return std::nullopt;
}

std::optional<Element> find_list_like(std::string_view doc, std::size_t pos) {
    while (auto t = next_tag(doc, pos)) {
        pos = t->end;
        if (t->closing) continue;
        if (t->name == "ol" || t->name == "ul" || t->name == "table" || t->name == "div" ||
            t->name == "section")
            return element_from(doc, *t);
    }
    return std::nullopt;
}

std::string text_content(std::string_view doc, std::size_t begin, std::size_t end) {
    std::string out;
    std::size_t pos = begin;
    while (pos < end) {
        auto t = next_tag(doc, pos);
        std::size_t tag_at = t ? std::min(t->begin, end) : end;
        out.append(doc.substr(pos, tag_at - pos));
        if (!t || t->begin >= end) break;
        if (!t->closing && (t->name == "script" || t->name == "style")) {
            auto [content_end, elem_end] = close_of(doc, *t);
            (void)content_end;
            pos = elem_end;
        } else {
            pos = t->end;
        }
        if (!is_inline_tag(t->name)) out.push_back(' ');
    }
    return collapse_whitespace(decode_html_entities(out));
}

} // namespace refaudit::html
