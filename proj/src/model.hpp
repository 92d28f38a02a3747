#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "doi.hpp"

namespace refaudit {

enum class SourceKind { publisher, crossref, dimensions };

const char* source_kind_name(SourceKind kind);
std::optional<SourceKind> source_kind_from_name(std::string_view name);
bool is_comparator(SourceKind kind);

enum class AuditStatus { ok, sneaked, missing };

const char* audit_status_name(AuditStatus status);
std::optional<AuditStatus> audit_status_from_name(std::string_view name);

struct StructuredFields {
    std::vector<std::string> authors;
    std::optional<int> year;
    std::optional<std::string> title;
    std::optional<std::string> container;
    std::optional<Doi> doi;

    bool operator==(const StructuredFields&) const = default;
};

// One bibliographic reference as found at a source. `raw` is always the
// verbatim string; structured fields are filled only when the source
// provided them.
struct ReferenceRecord {
    std::string raw;
    std::optional<StructuredFields> structured;

    bool operator==(const ReferenceRecord&) const = default;

    // Validating constructor: raw must be non-empty after trimming and a
    // structured year, when present, must lie in [1500, 2100].
    static ReferenceRecord make(std::string raw,
                                std::optional<StructuredFields> structured = std::nullopt);
};

constexpr int kYearMin = 1500;
constexpr int kYearMax = 2100;

// One article with its per-source reference lists. A missing map entry
// means the source did not cover this DOI at all; an empty list means the
// source covered it and registered nothing.
struct PublicationRecord {
    Doi doi;
    std::map<SourceKind, std::vector<ReferenceRecord>> lists;

    bool has(SourceKind kind) const { return lists.count(kind) != 0; }
    std::optional<std::size_t> count(SourceKind kind) const;
};

// Per-publication discrepancy for one comparator.
struct DeltaResult {
    Doi doi;
    SourceKind comparator = SourceKind::crossref;
    std::size_t s = 0;      // references shown in the version of record
    std::size_t r = 0;      // references registered at the comparator
    long long delta = 0;    // r - s
    AuditStatus status = AuditStatus::ok;

    bool operator==(const DeltaResult&) const = default;

    static DeltaResult make(Doi doi, SourceKind comparator, std::size_t s, std::size_t r);
};

AuditStatus status_for_delta(long long delta);

struct StatusRow {
    std::size_t article_count = 0;
    std::size_t refs_in_html = 0;
    std::size_t refs_in_source = 0;

    bool operator==(const StatusRow&) const = default;
};

struct CorpusTotals {
    std::size_t articles = 0;
    std::size_t refs_in_html = 0;
    std::size_t refs_in_source = 0;

    bool operator==(const CorpusTotals&) const = default;
};

// Aggregate discrepancy counts for one comparator over an audited corpus.
struct CorpusTable {
    SourceKind comparator = SourceKind::crossref;
    std::map<AuditStatus, StatusRow> rows;
    long long delta_sneaked = 0; // >= 0
    long long delta_missing = 0; // <= 0
    CorpusTotals totals;

    bool operator==(const CorpusTable&) const = default;

    const StatusRow& row(AuditStatus status) const;
};

struct EntityKey {
    enum class Kind { author, container };
    Kind kind = Kind::author;
    std::string name;

    auto operator<=>(const EntityKey&) const = default;
};

// Frequency profile over the metadata of sneaked references: who gets the
// undue citations.
struct BeneficiaryProfile {
    std::map<std::string, std::size_t> token_counts;
    std::map<EntityKey, std::size_t> entity_counts;

    bool operator==(const BeneficiaryProfile&) const = default;
    bool empty() const { return token_counts.empty() && entity_counts.empty(); }
};

} // namespace refaudit
