#include "refmatch.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "errors.hpp"
#include "textutil.hpp"

namespace refaudit {

namespace {

bool is_alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::optional<int> extract_year(const std::vector<std::string>& tokens,
                                const std::optional<StructuredFields>& structured) {
    if (structured && structured->year) return structured->year;
    std::set<int> seen;
    for (const auto& t : tokens) {
        if (t.size() != 4) continue;
        if (!std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
            continue;
        const int y = std::stoi(t);
        if (y >= kYearMin && y <= kYearMax) seen.insert(y);
    }
    if (seen.size() == 1) return *seen.begin();
    return std::nullopt;
}

} // namespace

CanonicalReference canonicalize(const ReferenceRecord& ref) {
    std::string folded = fold_diacritics(ref.raw);
    std::string flat;
    flat.reserve(folded.size());
    for (char c : folded) {
        if (is_alnum(c))
            flat.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else
            flat.push_back(' ');
    }
    std::string key = collapse_whitespace(flat);
    std::vector<std::string> tokens;
    if (!key.empty()) tokens = split(key, ' ');
    if (tokens.empty()) {
        // Nothing alphanumeric to key on; keep the raw glyphs as one token
        // so distinct inputs stay distinguishable.
        std::string fallback = collapse_whitespace(to_lower(ref.raw));
        std::replace(fallback.begin(), fallback.end(), ' ', '-');
        key = fallback;
        tokens = {fallback};
    }
    auto year = extract_year(tokens, ref.structured);
    return CanonicalReference{std::move(key), std::move(tokens), year, ref};
}

const std::set<std::string>& match_stopwords() {
    static const std::set<std::string> words = {
        // function words
        "a", "an", "and", "are", "as", "at", "by", "for", "from", "in",
        "is", "its", "of", "on", "or", "the", "their", "to", "with",
        // bibliographic boilerplate
        "vol", "volume", "issue", "no", "pp", "page", "pages", "doi",
        "http", "https", "www", "journal", "international", "et", "al",
        "pub", "isbn", "issn", "org", "com", "retrieved", "available",
    };
    return words;
}

std::set<std::string> content_token_set(const CanonicalReference& ref) {
    std::set<std::string> out;
    for (const auto& t : ref.tokens) {
        if (t.size() <= 1) continue;
        if (match_stopwords().count(t)) continue;
        out.insert(t);
    }
    return out;
}

double similarity(const CanonicalReference& a, const CanonicalReference& b) {
    const auto sa = content_token_set(a);
    const auto sb = content_token_set(b);
    double score = 0.0;
    if (sa.empty() && sb.empty()) {
        score = (a.key == b.key) ? 1.0 : 0.0;
    } else {
        std::size_t inter = 0;
        for (const auto& t : sa) inter += sb.count(t);
        const std::size_t uni = sa.size() + sb.size() - inter;
        score = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
    }
    if (a.year && b.year && *a.year == *b.year) score += 0.1;
    return std::min(score, 1.0);
}

DuplicationResult detect_duplication(std::span<const CanonicalReference> refs) {
    DuplicationResult result;
    const std::size_t n = refs.size();
    result.block_length = n;
    if (n == 0) {
        result.block_length = 0;
        return result;
    }
    for (std::size_t k = n; k >= 2; --k) {
        if (n % k != 0) continue;
        const std::size_t block = n / k;
        bool repeats = true;
        for (std::size_t i = block; i < n && repeats; ++i)
            repeats = refs[i].key == refs[i % block].key;
        if (repeats) {
            result.factor = k;
            result.block_length = block;
            break;
        }
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& r : refs) ++counts[r.key];
    for (const auto& [key, count] : counts)
        if (count > 1) result.repeated_keys.push_back(key);
    return result;
}

Alignment align(std::span<const CanonicalReference> a,
                std::span<const CanonicalReference> b,
                double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        raise(errc::invalid_argument, "similarity threshold must be in (0, 1]");

    struct Candidate {
        double sim;
        std::size_t i, j;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double sim = similarity(a[i], b[j]);
            if (sim >= threshold) candidates.push_back({sim, i, j});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.sim != y.sim) return x.sim > y.sim;
        if (x.i != y.i) return x.i < y.i;
        return x.j < y.j;
    });

    Alignment out;
    std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
    for (const auto& c : candidates) {
        if (used_a[c.i] || used_b[c.j]) continue;
        used_a[c.i] = true;
        used_b[c.j] = true;
        out.matched.push_back({c.i, c.j, c.sim});
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!used_a[i]) out.only_in_a.push_back(i);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (!used_b[j]) out.only_in_b.push_back(j);
    return out;
}

std::vector<CanonicalReference> canonicalize_list(std::span<const ReferenceRecord> refs) {
    std::vector<CanonicalReference> out;
    out.reserve(refs.size());
    for (const auto& r : refs) out.push_back(canonicalize(r));
    return out;
}

} // namespace refaudit
