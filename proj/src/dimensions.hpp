#pragma once

#include <functional>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "model.hpp"

namespace refaudit {

// One publication row from a bibliometric-platform "bibliometric mapping"
// export.
struct ExportRow {
    std::optional<Doi> doi;
    std::string publication_id; // platform-internal id, e.g. "pub.1146638907"
    std::string title;
    std::string cited_references_raw; // delimited multi-reference cell

    bool operator==(const ExportRow&) const = default;
};

// Case-insensitive header names accepted for each required column.
struct ColumnAliases {
    std::vector<std::string> doi = {"doi"};
    std::vector<std::string> publication_id = {"publication id", "publication_id", "id"};
    std::vector<std::string> title = {"title"};
    std::vector<std::string> cited_references = {"cited references", "cited_references",
                                                 "references", "cited references - raw"};
};

// Streams export rows to `sink`. Throws Error(header_mismatch) when a
// required column is absent, Error(row_parse) with the record number on
// malformed rows, Error(encoding) on non-UTF-8 bytes.
void parse_export_stream(std::istream& in, const std::function<void(ExportRow)>& sink,
                         const ColumnAliases& aliases = {});

std::vector<ExportRow> parse_export(std::istream& in, const ColumnAliases& aliases = {});

// Writes rows back out in the canonical column order; inverse of
// parse_export for round-trip checks.
std::string serialize_export(std::span<const ExportRow> rows);

// Intra-cell reference grammar: records separated by `record_separator`,
// fields by `field_separator`, fields named in order. The platform's
// current layout is the default; fixtures pin it.
struct CellGrammar {
    char record_separator = ';';
    char field_separator = '|';
    std::vector<std::string> field_order = {"id", "authors", "source", "year"};
};

struct SplitResult {
    std::vector<ReferenceRecord> references;
    // Cell did not follow the grammar and was kept as one raw record.
    bool fallback_single = false;
};

// Best-effort split of one cited-references cell; never throws.
SplitResult split_reference_cell(const std::string& cell, const CellGrammar& grammar = {});

struct JoinResult {
    std::map<Doi, std::vector<ReferenceRecord>> joined;
    std::vector<std::size_t> unmatched_rows; // row indices with no corpus DOI
    std::vector<Doi> unavailable;            // corpus DOIs absent from the export
    std::vector<Doi> duplicate_dois;         // DOIs claimed by more than one row
    std::vector<std::size_t> duplicate_rows; // every row index involved in a duplicate
    std::vector<Doi> fallback_cells;         // DOIs whose cell needed the single-record fallback
};

// Joins export rows onto the corpus inventory by normalized DOI. The first
// row claiming a DOI wins; all rows involved in a duplicate are flagged.
JoinResult join_to_corpus(std::span<const ExportRow> rows, const std::set<Doi>& corpus,
                          const CellGrammar& grammar = {});

} // namespace refaudit
