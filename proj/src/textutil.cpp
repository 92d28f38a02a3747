#include "textutil.hpp"

#include <array>
#include <cctype>
#include <cstdint>

namespace refaudit {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Base letters for U+0100..U+017F (Latin Extended-A), case preserved.
constexpr std::string_view kLatinExtA =
    "AaAaAa" "CcCcCcCc" "DdDd" "EeEeEeEeEe" "GgGgGgGg" "HhHh"
    "IiIiIiIiIi" "Ii" "Jj" "Kkk" "LlLlLlLlLl" "NnNnNnn" "Nn"
    "OoOoOo" "Oo" "RrRrRr" "SsSsSsSs" "TtTtTt" "UuUuUuUuUuUu"
    "Ww" "YyY" "ZzZzZz" "s";
static_assert(kLatinExtA.size() == 128);

void fold_codepoint(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
        return;
    }
    if (cp >= 0xC0 && cp <= 0xFF) {
        switch (cp) {
        case 0xC6: out += "AE"; return;
        case 0xE6: out += "ae"; return;
        case 0xDE: out += "TH"; return;
        case 0xFE: out += "th"; return;
        case 0xDF: out += "ss"; return;
        case 0xD7: case 0xF7: out.push_back(' '); return;
        default: break;
        }
        static constexpr std::string_view bases =
            "AAAAAA?CEEEEIIIIDNOOOOO?OUUUUY??aaaaaa?ceeeeiiiidnooooo?ouuuuy?y";
        char b = bases[cp - 0xC0];
        out.push_back(b == '?' ? ' ' : b);
        return;
    }
    if (cp >= 0x100 && cp <= 0x17F) {
        out.push_back(kLatinExtA[cp - 0x100]);
        return;
    }
    // Anything else becomes a separator rather than an opaque byte blob.
    out.push_back(' ');
}

// Decodes one UTF-8 sequence starting at i; returns the codepoint and
// advances i past it, or returns nullopt leaving i on the bad byte.
std::optional<std::uint32_t> next_codepoint(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() &&
               (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    auto cb = [&](std::size_t k) {
        return static_cast<std::uint32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
    };
    if (b0 >= 0xC2 && b0 <= 0xDF) {
        if (!cont(1)) return std::nullopt;
        std::uint32_t cp = ((b0 & 0x1Fu) << 6) | cb(1);
        i += 2;
        return cp;
    }
    if (b0 >= 0xE0 && b0 <= 0xEF) {
        if (!cont(1) || !cont(2)) return std::nullopt;
        const auto b1 = static_cast<unsigned char>(s[i + 1]);
        if (b0 == 0xE0 && b1 < 0xA0) return std::nullopt;
        if (b0 == 0xED && b1 > 0x9F) return std::nullopt;
        std::uint32_t cp = ((b0 & 0x0Fu) << 12) | (cb(1) << 6) | cb(2);
        i += 3;
        return cp;
    }
    if (b0 >= 0xF0 && b0 <= 0xF4) {
        if (!cont(1) || !cont(2) || !cont(3)) return std::nullopt;
        const auto b1 = static_cast<unsigned char>(s[i + 1]);
        if (b0 == 0xF0 && b1 < 0x90) return std::nullopt;
        if (b0 == 0xF4 && b1 > 0x8F) return std::nullopt;
        std::uint32_t cp = ((b0 & 0x07u) << 18) | (cb(1) << 12) | (cb(2) << 6) | cb(3);
        i += 4;
        return cp;
    }
    return std::nullopt;
}

} // namespace

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(lower(c));
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (lower(a[i]) != lower(b[i])) return false;
    return true;
}

bool istarts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

std::size_t ifind(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return 0;
    if (haystack.size() < needle.size()) return std::string_view::npos;
    for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i)
        if (iequals(haystack.substr(i, needle.size()), needle)) return i;
    return std::string_view::npos;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : s) {
        if (is_space(c)) {
            pending = !out.empty();
        } else {
            if (pending) out.push_back(' ');
            pending = false;
            out.push_back(c);
        }
    }
    return out;
}

std::string percent_encode(std::string_view s) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        const bool safe = (u >= 'A' && u <= 'Z') || (u >= 'a' && u <= 'z') ||
                          (u >= '0' && u <= '9') || u == '-' || u == '_' ||
                          u == '.' || u == '~';
        if (safe) {
            out.push_back(c);
        } else {
            out.push_back('%');
            out.push_back(hex[u >> 4]);
            out.push_back(hex[u & 0xF]);
        }
    }
    return out;
}

std::string fold_diacritics(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    std::size_t i = 0;
    while (i < utf8.size()) {
        auto cp = next_codepoint(utf8, i);
        if (!cp) {
            out.push_back(' ');
            ++i;
            continue;
        }
        fold_codepoint(out, *cp);
    }
    return out;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    while (i < bytes.size()) {
        const std::size_t start = i;
        if (!next_codepoint(bytes, i)) return start;
    }
    return std::nullopt;
}

std::string decode_html_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        const std::size_t semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view name = s.substr(i + 1, semi - i - 1);
        if (!name.empty() && name[0] == '#') {
            std::uint32_t cp = 0;
            bool ok = name.size() > 1;
            if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
                for (std::size_t k = 2; k < name.size() && ok; ++k) {
                    char c = name[k];
                    std::uint32_t d;
                    if (c >= '0' && c <= '9') d = static_cast<std::uint32_t>(c - '0');
                    else if (c >= 'a' && c <= 'f') d = static_cast<std::uint32_t>(c - 'a' + 10);
                    else if (c >= 'A' && c <= 'F') d = static_cast<std::uint32_t>(c - 'A' + 10);
                    else { ok = false; break; }
                    cp = cp * 16 + d;
                }
                ok = ok && name.size() > 2;
            } else {
                for (std::size_t k = 1; k < name.size() && ok; ++k) {
                    char c = name[k];
                    if (c < '0' || c > '9') { ok = false; break; }
                    cp = cp * 10 + static_cast<std::uint32_t>(c - '0');
                }
            }
            if (ok && cp > 0 && cp <= 0x10FFFF) {
                append_utf8(out, cp);
                i = semi + 1;
                continue;
            }
            out.push_back(s[i++]);
            continue;
        }
        struct Named { std::string_view name; std::string_view text; };
        static constexpr Named table[] = {
            {"amp", "&"},    {"lt", "<"},     {"gt", ">"},
            {"quot", "\""},  {"apos", "'"},   {"nbsp", " "},
            {"ndash", "-"},  {"mdash", "-"},  {"hellip", "..."},
            {"rsquo", "'"},  {"lsquo", "'"},  {"ldquo", "\""},
            {"rdquo", "\""}, {"shy", ""},
        };
        bool matched = false;
        for (const auto& e : table) {
            if (name == e.name) {
                out += e.text;
                i = semi + 1;
                matched = true;
                break;
            }
        }
        if (!matched) out.push_back(s[i++]);
    }
    return out;
}

std::string format_thousands(long long value) {
    const bool neg = value < 0;
    std::string digits = std::to_string(neg ? -value : value);
    std::string out;
    const std::size_t n = digits.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && (n - i) % 3 == 0) out.push_back(',');
        out.push_back(digits[i]);
    }
    return neg ? "-" + out : out;
}

} // namespace refaudit
