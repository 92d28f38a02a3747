#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "model.hpp"

namespace refaudit {

// Format-neutral view of a reference used for content comparison.
struct CanonicalReference {
    std::string key;                 // lowercase, single-space separated
    std::vector<std::string> tokens; // key split on spaces
    std::optional<int> year;
    ReferenceRecord source_record;
};

CanonicalReference canonicalize(const ReferenceRecord& ref);

// Function words plus bibliographic boilerplate excluded from similarity.
const std::set<std::string>& match_stopwords();

// Tokens that carry content for similarity: stopwords and single-character
// tokens removed.
std::set<std::string> content_token_set(const CanonicalReference& ref);

// Token-set Jaccard similarity with a +0.1 bonus for an equal extracted
// year, capped at 1.0. Two references with no content tokens compare by
// key equality.
double similarity(const CanonicalReference& a, const CanonicalReference& b);

constexpr double kDefaultSimilarityThreshold = 0.6;

struct DuplicationResult {
    std::size_t factor = 1;       // largest k with list == first block repeated k times
    std::size_t block_length = 0; // list size / factor
    std::vector<std::string> repeated_keys; // keys occurring more than once, sorted
};

DuplicationResult detect_duplication(std::span<const CanonicalReference> refs);

struct MatchedPair {
    std::size_t index_a = 0;
    std::size_t index_b = 0;
    double similarity = 0.0;
};

struct Alignment {
    std::vector<MatchedPair> matched;
    std::vector<std::size_t> only_in_a;
    std::vector<std::size_t> only_in_b;
};

// Greedy best-first one-to-one matching: pairs considered by descending
// similarity (ties broken by lower index pair), kept when both sides are
// still free and similarity >= threshold.
Alignment align(std::span<const CanonicalReference> a,
                std::span<const CanonicalReference> b,
                double threshold = kDefaultSimilarityThreshold);

std::vector<CanonicalReference> canonicalize_list(std::span<const ReferenceRecord> refs);

} // namespace refaudit
