#pragma once

#include <optional>
#include <string>
#include <vector>

#include "audit.hpp"
#include "model.hpp"

namespace refaudit {

inline bool operator==(const CorpusRates& a, const CorpusRates& b) {
    return a.sneaked_share_of_registered == b.sneaked_share_of_registered &&
           a.sneaked_augmentation == b.sneaked_augmentation &&
           a.missing_share_of_original == b.missing_share_of_original;
}

// One audited publication worth flagging (non-zero delta), with forensic
// context.
struct FlaggedEntry {
    Doi doi;
    SourceKind comparator = SourceKind::crossref;
    std::size_t s = 0;
    std::size_t r = 0;
    long long delta = 0;
    AuditStatus status = AuditStatus::ok;
    std::size_t duplication_factor = 1;
    std::vector<std::string> sneaked_sample; // bounded sample of sneaked raw strings

    bool operator==(const FlaggedEntry&) const = default;
};

struct TableBlock {
    CorpusTable table;
    std::optional<CorpusRates> rates; // absent when totals were zero

    bool operator==(const TableBlock&) const = default;
};

struct Reconciliation {
    std::vector<Doi> unavailable; // corpus DOIs excluded from some comparator
    std::size_t unmatched_rows = 0;

    bool operator==(const Reconciliation&) const = default;
};

struct AuditReport {
    std::string corpus_id;
    std::string generated_at;
    std::vector<TableBlock> tables;
    std::vector<FlaggedEntry> flagged;
    BeneficiaryProfile beneficiaries;
    Reconciliation reconciliation;

    bool operator==(const AuditReport&) const = default;
};

// Human-readable report: status tables mirroring the audit layout
// (OK/Sneaked/Missing/Total), thousands separators, flagged entries by
// |delta| descending then DOI. Deterministic for equal reports.
std::string render_markdown(const AuditReport& report);

// Machine-readable report: schema-versioned, stable key order, raw
// integers. parse_report_json inverts it exactly.
std::string render_json(const AuditReport& report);
AuditReport parse_report_json(const std::string& text);

// Flagged publications as CSV: doi, comparator, s, r, delta, status,
// duplication_factor.
std::string render_flagged_csv(const AuditReport& report);

// Canonical flagged ordering used by every renderer: |delta| descending,
// ties by DOI then comparator name.
std::vector<FlaggedEntry> sorted_flagged(const AuditReport& report);

} // namespace refaudit
