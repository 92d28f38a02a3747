#pragma once

#include <span>
#include <utility>
#include <vector>

#include "model.hpp"
#include "refmatch.hpp"

namespace refaudit {

// Per-publication discrepancy against one comparator:
// delta = registered count − version-of-record count. Throws
// Error(source_unavailable) when either list is absent (absent means the
// source never covered the article; an empty list still counts as
// covered).
DeltaResult compute_delta(const PublicationRecord& pub, SourceKind comparator);

// Buckets results by status and sums the discrepancy lower bounds;
// comparator taken from the inputs. Throws Error(mixed_comparators) when
// inputs disagree. The empty-input overload needs the comparator spelled
// out.
CorpusTable aggregate(std::span<const DeltaResult> results);
CorpusTable aggregate(std::span<const DeltaResult> results, SourceKind comparator);

struct CorpusRates {
    double sneaked_share_of_registered = 0.0; // Δ_sneaked / total registered refs
    double sneaked_augmentation = 0.0;        // Δ_sneaked / total version-of-record refs
    double missing_share_of_original = 0.0;   // |Δ_missing| / total version-of-record refs
};

// Exact ratios from a corpus table. Throws Error(division_by_zero_corpus)
// when a required total is zero.
CorpusRates compute_rates(const CorpusTable& table);

// Content-level sneaked set: comparator references that fuzzy alignment
// cannot pair with any version-of-record reference. Always at least
// max(delta, 0) entries — the count-level delta is a lower bound.
std::vector<ReferenceRecord> extract_sneaked_references(
    const PublicationRecord& pub, SourceKind comparator,
    double threshold = kDefaultSimilarityThreshold);

enum class CountingMode {
    per_reference,  // each sneaked reference counts an entity/token once
    per_occurrence, // every mention counts
};

struct BeneficiaryAnalysis {
    BeneficiaryProfile profile;
    // Name candidates recovered from unstructured strings by
    // capitalization pattern; lower confidence than structured fields, so
    // kept out of the profile proper.
    std::vector<std::pair<std::string, std::size_t>> low_confidence_names;
};

// Who benefits from the undue citations: frequency profile over the
// sneaked references' tokens and structured entities.
BeneficiaryAnalysis beneficiary_profile(std::span<const ReferenceRecord> sneaked,
                                        CountingMode mode = CountingMode::per_reference);

// Profile entries sorted by count descending (ties by name) for display.
std::vector<std::pair<EntityKey, std::size_t>> top_entities(const BeneficiaryProfile& profile,
                                                            std::size_t limit);
std::vector<std::pair<std::string, std::size_t>> top_tokens(const BeneficiaryProfile& profile,
                                                            std::size_t limit);

} // namespace refaudit
