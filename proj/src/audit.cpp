#include "audit.hpp"

#include <algorithm>
#include <regex>

#include "errors.hpp"
#include "textutil.hpp"

namespace refaudit {

namespace {

const std::vector<ReferenceRecord>& list_or_raise(const PublicationRecord& pub,
                                                  SourceKind kind) {
    auto it = pub.lists.find(kind);
    if (it == pub.lists.end())
        raise(errc::source_unavailable,
              pub.doi.value() + ": no " + source_kind_name(kind) + " list");
    return it->second;
}

// Capitalized multi-word runs, optionally led by initials: catches both
// "Bhavesh Kataria" and "J. Nageswara Rao" in unstructured strings.
const std::regex& name_candidate_re() {
    static const std::regex re(
        R"(((?:[A-Z]\.\s*)*[A-Z][a-z]{2,}(?:\s+(?:[A-Z]\.\s*)*[A-Z][a-z]{2,}){1,3}))");
    return re;
}

} // namespace

DeltaResult compute_delta(const PublicationRecord& pub, SourceKind comparator) {
    if (!is_comparator(comparator))
        raise(errc::invalid_argument, "comparator must be crossref or dimensions");
    const auto& shown = list_or_raise(pub, SourceKind::publisher);
    const auto& registered = list_or_raise(pub, comparator);
    return DeltaResult::make(pub.doi, comparator, shown.size(), registered.size());
}

CorpusTable aggregate(std::span<const DeltaResult> results, SourceKind comparator) {
    if (!is_comparator(comparator))
        raise(errc::invalid_argument, "comparator must be crossref or dimensions");
    CorpusTable table;
    table.comparator = comparator;
    for (AuditStatus s : {AuditStatus::ok, AuditStatus::sneaked, AuditStatus::missing})
        table.rows[s] = StatusRow{};
    for (const auto& result : results) {
        if (result.comparator != comparator)
            raise(errc::mixed_comparators,
                  "aggregation mixes " + std::string(source_kind_name(comparator)) + " and " +
                      source_kind_name(result.comparator) + " results");
        auto& row = table.rows[result.status];
        row.article_count += 1;
        row.refs_in_html += result.s;
        row.refs_in_source += result.r;
        if (result.delta > 0) table.delta_sneaked += result.delta;
        if (result.delta < 0) table.delta_missing += result.delta;
        table.totals.articles += 1;
        table.totals.refs_in_html += result.s;
        table.totals.refs_in_source += result.r;
    }
    return table;
}

CorpusTable aggregate(std::span<const DeltaResult> results) {
    const SourceKind comparator =
        results.empty() ? SourceKind::crossref : results.front().comparator;
    return aggregate(results, comparator);
}

CorpusRates compute_rates(const CorpusTable& table) {
    if (table.totals.refs_in_source == 0)
        raise(errc::division_by_zero_corpus,
              "no registered references in the corpus; shares are undefined");
    if (table.totals.refs_in_html == 0)
        raise(errc::division_by_zero_corpus,
              "no version-of-record references in the corpus; shares are undefined");
    CorpusRates rates;
    rates.sneaked_share_of_registered =
        static_cast<double>(table.delta_sneaked) /
        static_cast<double>(table.totals.refs_in_source);
    rates.sneaked_augmentation = static_cast<double>(table.delta_sneaked) /
                                 static_cast<double>(table.totals.refs_in_html);
    rates.missing_share_of_original = static_cast<double>(-table.delta_missing) /
                                      static_cast<double>(table.totals.refs_in_html);
    return rates;
}

std::vector<ReferenceRecord> extract_sneaked_references(const PublicationRecord& pub,
                                                        SourceKind comparator,
                                                        double threshold) {
    if (!is_comparator(comparator))
        raise(errc::invalid_argument, "comparator must be crossref or dimensions");
    const auto& shown = list_or_raise(pub, SourceKind::publisher);
    const auto& registered = list_or_raise(pub, comparator);
    const auto canon_registered = canonicalize_list(registered);
    const auto canon_shown = canonicalize_list(shown);
    const auto alignment = align(canon_registered, canon_shown, threshold);
    std::vector<ReferenceRecord> out;
    out.reserve(alignment.only_in_a.size());
    for (std::size_t index : alignment.only_in_a) out.push_back(registered[index]);
    return out;
}

BeneficiaryAnalysis beneficiary_profile(std::span<const ReferenceRecord> sneaked,
                                        CountingMode mode) {
    BeneficiaryAnalysis analysis;
    std::map<std::string, std::size_t> low_confidence;

    for (const auto& ref : sneaked) {
        const auto canon = canonicalize(ref);

        if (mode == CountingMode::per_reference) {
            for (const auto& token : content_token_set(canon))
                analysis.profile.token_counts[token] += 1;
        } else {
            for (const auto& token : canon.tokens) {
                if (token.size() <= 1 || match_stopwords().count(token)) continue;
                analysis.profile.token_counts[token] += 1;
            }
        }

        bool has_structured_author = false;
        if (ref.structured) {
            std::set<EntityKey> seen_in_ref;
            for (const auto& author : ref.structured->authors) {
                std::string name = collapse_whitespace(author);
                if (name.empty()) continue;
                has_structured_author = true;
                EntityKey key{EntityKey::Kind::author, name};
                if (mode == CountingMode::per_reference && !seen_in_ref.insert(key).second)
                    continue;
                analysis.profile.entity_counts[key] += 1;
            }
            if (ref.structured->container) {
                std::string name = collapse_whitespace(*ref.structured->container);
                if (!name.empty())
                    analysis.profile.entity_counts[{EntityKey::Kind::container, name}] += 1;
            }
        }

        if (!has_structured_author) {
            // No structured names: fall back to capitalization patterns.
            std::set<std::string> seen_names;
            auto begin = std::sregex_iterator(ref.raw.begin(), ref.raw.end(),
                                              name_candidate_re());
            for (auto it = begin; it != std::sregex_iterator(); ++it) {
                std::string name = collapse_whitespace(it->str());
                if (mode == CountingMode::per_reference && !seen_names.insert(name).second)
                    continue;
                low_confidence[name] += 1;
            }
        }
    }

    analysis.low_confidence_names.assign(low_confidence.begin(), low_confidence.end());
    std::sort(analysis.low_confidence_names.begin(), analysis.low_confidence_names.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
              });
    return analysis;
}

std::vector<std::pair<EntityKey, std::size_t>> top_entities(const BeneficiaryProfile& profile,
                                                            std::size_t limit) {
    std::vector<std::pair<EntityKey, std::size_t>> out(profile.entity_counts.begin(),
                                                       profile.entity_counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (out.size() > limit) out.resize(limit);
    return out;
}

std::vector<std::pair<std::string, std::size_t>> top_tokens(const BeneficiaryProfile& profile,
                                                            std::size_t limit) {
    std::vector<std::pair<std::string, std::size_t>> out(profile.token_counts.begin(),
                                                         profile.token_counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (out.size() > limit) out.resize(limit);
    return out;
}

} // namespace refaudit
