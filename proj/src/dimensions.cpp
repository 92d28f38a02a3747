#include "dimensions.hpp"

#include <algorithm>
#include <sstream>

#include "csv.hpp"
#include "errors.hpp"
#include "textutil.hpp"

namespace refaudit {

namespace {

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::vector<std::string>& aliases) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name = trim(header[i]);
        for (const auto& alias : aliases)
            if (iequals(name, alias)) return i;
    }
    return std::nullopt;
}

std::string cell_or_empty(const std::vector<std::string>& row, std::size_t index) {
    return index < row.size() ? row[index] : std::string();
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::optional<int> parse_year_token(std::string_view s) {
    std::string t = trim(s);
    if (t.size() != 4) return std::nullopt;
    int y = 0;
    for (char c : t) {
        if (c < '0' || c > '9') return std::nullopt;
        y = y * 10 + (c - '0');
    }
    if (y < kYearMin || y > kYearMax) return std::nullopt;
    return y;
}

} // namespace

void parse_export_stream(std::istream& in, const std::function<void(ExportRow)>& sink,
                         const ColumnAliases& aliases) {
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) raise(errc::header_mismatch, "export file has no header row");

    auto doi_col = find_column(row, aliases.doi);
    auto id_col = find_column(row, aliases.publication_id);
    auto title_col = find_column(row, aliases.title);
    auto refs_col = find_column(row, aliases.cited_references);
    if (!doi_col || !id_col || !refs_col) {
        std::string missing;
        if (!doi_col) missing += " DOI";
        if (!id_col) missing += " publication-id";
        if (!refs_col) missing += " cited-references";
        raise(errc::header_mismatch, "export header lacks required columns:" + missing);
    }

    const std::size_t width = row.size();
    while (reader.next(row)) {
        if (row.size() != width)
            raise(errc::row_parse, "row " + std::to_string(reader.record_number()) + ": has " +
                                       std::to_string(row.size()) + " cells, header has " +
                                       std::to_string(width));
        ExportRow out;
        out.doi = Doi::try_parse(row[*doi_col]);
        out.publication_id = trim(row[*id_col]);
        if (title_col) out.title = trim(row[*title_col]);
        out.cited_references_raw = cell_or_empty(row, *refs_col);
        if (out.publication_id.empty())
            raise(errc::row_parse,
                  "row " + std::to_string(reader.record_number()) + ": publication id missing");
        if (!out.doi && out.title.empty())
            raise(errc::row_parse, "row " + std::to_string(reader.record_number()) +
                                       ": neither DOI nor title present");
        sink(std::move(out));
    }
}

std::vector<ExportRow> parse_export(std::istream& in, const ColumnAliases& aliases) {
    std::vector<ExportRow> rows;
    parse_export_stream(in, [&](ExportRow row) { rows.push_back(std::move(row)); }, aliases);
    return rows;
}

std::string serialize_export(std::span<const ExportRow> rows) {
    std::ostringstream out;
    out << "Publication ID,DOI,Title,Cited references\r\n";
    for (const auto& r : rows) {
        out << csv_quote(r.publication_id) << ',' << csv_quote(r.doi ? r.doi->value() : "")
            << ',' << csv_quote(r.title) << ',' << csv_quote(r.cited_references_raw) << "\r\n";
    }
    return out.str();
}

SplitResult split_reference_cell(const std::string& cell, const CellGrammar& grammar) {
    SplitResult result;
    std::string trimmed = trim(cell);
    if (trimmed.empty()) return result;

    const std::size_t expected_fields = grammar.field_order.size();
    std::vector<ReferenceRecord> parsed;
    bool grammar_holds = true;

    for (const auto& record_text : split(trimmed, grammar.record_separator)) {
        std::string rec = trim(record_text);
        if (rec.empty()) continue;
        auto fields = split(rec, grammar.field_separator);
        if (fields.size() != expected_fields) {
            grammar_holds = false;
            break;
        }
        StructuredFields f;
        bool any = false;
        for (std::size_t i = 0; i < expected_fields; ++i) {
            std::string value = trim(fields[i]);
            if (value.empty()) continue;
            const std::string& name = grammar.field_order[i];
            if (name == "authors") {
                for (const auto& a : split(value, ','))
                    if (auto t = trim(a); !t.empty()) f.authors.push_back(t);
                any = any || !f.authors.empty();
            } else if (name == "source") {
                f.container = value;
                any = true;
            } else if (name == "year") {
                if (auto y = parse_year_token(value)) {
                    f.year = y;
                    any = true;
                }
            } else if (name == "title") {
                f.title = value;
                any = true;
            } else if (name == "doi") {
                if (auto d = Doi::try_parse(value)) {
                    f.doi = d;
                    any = true;
                }
            }
            // "id": platform-internal key; stays in raw only
        }
        parsed.push_back(
            ReferenceRecord::make(rec, any ? std::optional(std::move(f)) : std::nullopt));
    }

    if (!grammar_holds) {
        result.references.push_back(ReferenceRecord::make(trimmed));
        result.fallback_single = true;
        return result;
    }
    result.references = std::move(parsed);
    return result;
}

JoinResult join_to_corpus(std::span<const ExportRow> rows, const std::set<Doi>& corpus,
                          const CellGrammar& grammar) {
    JoinResult result;
    std::map<Doi, std::size_t> first_claim;
    std::set<Doi> flagged;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.doi || corpus.count(*row.doi) == 0) {
            result.unmatched_rows.push_back(i);
            continue;
        }
        auto [it, fresh] = first_claim.emplace(*row.doi, i);
        if (!fresh) {
            if (flagged.insert(*row.doi).second) {
                result.duplicate_dois.push_back(*row.doi);
                result.duplicate_rows.push_back(it->second);
            }
            result.duplicate_rows.push_back(i);
            continue; // first row kept
        }
        auto split_result = split_reference_cell(row.cited_references_raw, grammar);
        if (split_result.fallback_single) result.fallback_cells.push_back(*row.doi);
        result.joined.emplace(*row.doi, std::move(split_result.references));
    }
    for (const auto& doi : corpus)
        if (result.joined.count(doi) == 0) result.unavailable.push_back(doi);
    return result;
}

} // namespace refaudit
