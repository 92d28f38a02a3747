#include "refaudit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "audit.hpp"
#include "config.hpp"
#include "crossref.hpp"
#include "dimensions.hpp"
#include "errors.hpp"
#include "json_conv.hpp"
#include "pipeline.hpp"
#include "publisher.hpp"
#include "refmatch.hpp"
#include "version.hpp"

using namespace refaudit;

struct refaudit_session {
    std::unique_ptr<Pipeline> pipeline;
    std::string last_error;
};

namespace {

thread_local std::string t_last_error;

refaudit_status status_of(errc code) {
    switch (code) {
        case errc::none: return REFAUDIT_OK;
        case errc::malformed_doi: return REFAUDIT_E_MALFORMED_DOI;
        case errc::unrecognized_report_format: return REFAUDIT_E_UNRECOGNIZED_REPORT_FORMAT;
        case errc::not_registered: return REFAUDIT_E_NOT_REGISTERED;
        case errc::transport: return REFAUDIT_E_TRANSPORT;
        case errc::parse: return REFAUDIT_E_PARSE;
        case errc::cache_miss: return REFAUDIT_E_CACHE_MISS;
        case errc::extraction_failed: return REFAUDIT_E_EXTRACTION_FAILED;
        case errc::header_mismatch: return REFAUDIT_E_HEADER_MISMATCH;
        case errc::row_parse: return REFAUDIT_E_ROW_PARSE;
        case errc::encoding: return REFAUDIT_E_ENCODING;
        case errc::duplicate_row: return REFAUDIT_E_DUPLICATE_ROW;
        case errc::source_unavailable: return REFAUDIT_E_SOURCE_UNAVAILABLE;
        case errc::mixed_comparators: return REFAUDIT_E_MIXED_COMPARATORS;
        case errc::division_by_zero_corpus: return REFAUDIT_E_DIVISION_BY_ZERO_CORPUS;
        case errc::invalid_argument: return REFAUDIT_E_INVALID_ARGUMENT;
        case errc::io: return REFAUDIT_E_IO;
        case errc::internal: return REFAUDIT_E_INTERNAL;
    }
    return REFAUDIT_E_INTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs `body`, routing the result string and any failure into the C
// conventions. `session` may be null for stateless helpers.
template <typename Body>
refaudit_status guarded(refaudit_session* session, char** out, Body&& body) {
    if (out) *out = nullptr;
    try {
        std::string result = body();
        if (out) {
            *out = dup_string(result);
            if (!*out) {
                t_last_error = "out of memory";
                return REFAUDIT_E_INTERNAL;
            }
        }
        return REFAUDIT_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        if (session) session->last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        if (session) session->last_error = e.what();
        return REFAUDIT_E_INTERNAL;
    } catch (...) {
        t_last_error = "unknown failure";
        if (session) session->last_error = t_last_error;
        return REFAUDIT_E_INTERNAL;
    }
}

std::vector<ReferenceRecord> references_from_text(const char* refs_json, const char* what) {
    if (!refs_json) raise(errc::invalid_argument, std::string(what) + " must not be null");
    auto j = parse_json(refs_json, what);
    if (!j.is_array()) raise(errc::invalid_argument, std::string(what) + " must be an array");
    std::vector<ReferenceRecord> out;
    out.reserve(j.size());
    for (const auto& entry : j) {
        if (entry.is_string())
            out.push_back(ReferenceRecord::make(entry.get<std::string>()));
        else
            out.push_back(reference_record_from_json(entry));
    }
    return out;
}

const char* require(const char* value, const char* name) {
    if (!value) raise(errc::invalid_argument, std::string(name) + " must not be null");
    return value;
}

} // namespace

extern "C" {

const char* refaudit_version(void) { return kVersion; }

const char* refaudit_status_name(refaudit_status status) {
    switch (status) {
        case REFAUDIT_OK: return errc_name(errc::none);
        case REFAUDIT_E_MALFORMED_DOI: return errc_name(errc::malformed_doi);
        case REFAUDIT_E_UNRECOGNIZED_REPORT_FORMAT:
            return errc_name(errc::unrecognized_report_format);
        case REFAUDIT_E_NOT_REGISTERED: return errc_name(errc::not_registered);
        case REFAUDIT_E_TRANSPORT: return errc_name(errc::transport);
        case REFAUDIT_E_PARSE: return errc_name(errc::parse);
        case REFAUDIT_E_CACHE_MISS: return errc_name(errc::cache_miss);
        case REFAUDIT_E_EXTRACTION_FAILED: return errc_name(errc::extraction_failed);
        case REFAUDIT_E_HEADER_MISMATCH: return errc_name(errc::header_mismatch);
        case REFAUDIT_E_ROW_PARSE: return errc_name(errc::row_parse);
        case REFAUDIT_E_ENCODING: return errc_name(errc::encoding);
        case REFAUDIT_E_DUPLICATE_ROW: return errc_name(errc::duplicate_row);
        case REFAUDIT_E_SOURCE_UNAVAILABLE: return errc_name(errc::source_unavailable);
        case REFAUDIT_E_MIXED_COMPARATORS: return errc_name(errc::mixed_comparators);
        case REFAUDIT_E_DIVISION_BY_ZERO_CORPUS:
            return errc_name(errc::division_by_zero_corpus);
        case REFAUDIT_E_INVALID_ARGUMENT: return errc_name(errc::invalid_argument);
        case REFAUDIT_E_IO: return errc_name(errc::io);
        case REFAUDIT_E_INTERNAL: return errc_name(errc::internal);
    }
    return "Unknown";
}

void refaudit_string_free(char* s) { std::free(s); }

const char* refaudit_last_error(void) { return t_last_error.c_str(); }

const char* refaudit_session_last_error(const refaudit_session* session) {
    return session ? session->last_error.c_str() : "";
}

refaudit_status refaudit_session_new(const char* config_json, refaudit_session** out_session) {
    if (out_session) *out_session = nullptr;
    return guarded(nullptr, nullptr, [&]() -> std::string {
        if (!out_session) raise(errc::invalid_argument, "out_session must not be null");
        RunConfig config;
        if (config_json && *config_json) config = config_from_json(config_json, RunConfig{});
        config.validate();
        auto session = std::make_unique<refaudit_session>();
        session->pipeline = std::make_unique<Pipeline>(
            std::move(config), make_httplib_transport(), std::make_shared<SystemClock>());
        *out_session = session.release();
        return std::string();
    });
}

void refaudit_session_free(refaudit_session* session) { delete session; }

refaudit_status refaudit_run_inventory(refaudit_session* session, char** out_json) {
    return guarded(session, out_json, [&]() {
        if (!session) raise(errc::invalid_argument, "session must not be null");
        auto outcome = session->pipeline->run_inventory();
        ojson j = ojson::object();
        j["dois"] = outcome.dois.size();
        ojson per_pubid = ojson::object();
        for (const auto& [pubid, count] : outcome.per_pubid) per_pubid[pubid] = count;
        j["per_pubid"] = std::move(per_pubid);
        j["inventory_path"] = outcome.inventory_path;
        return j.dump(2);
    });
}

refaudit_status refaudit_run_harvest(refaudit_session* session, char** out_json) {
    return guarded(session, out_json, [&]() {
        if (!session) raise(errc::invalid_argument, "session must not be null");
        auto outcome = session->pipeline->run_harvest();
        ojson j = ojson::object();
        j["works_fetched"] = outcome.works_fetched;
        j["works_from_cache"] = outcome.works_from_cache;
        j["pages_fetched"] = outcome.pages_fetched;
        j["pages_from_cache"] = outcome.pages_from_cache;
        j["not_registered"] = outcome.not_registered;
        ojson failures = ojson::array();
        for (const auto& [doi, reason] : outcome.failures)
            failures.push_back(ojson::array({doi, reason}));
        j["failures"] = std::move(failures);
        return j.dump(2);
    });
}

refaudit_status refaudit_run_ingest(refaudit_session* session, char** out_json) {
    return guarded(session, out_json, [&]() {
        if (!session) raise(errc::invalid_argument, "session must not be null");
        auto outcome = session->pipeline->run_ingest();
        ojson j = ojson::object();
        j["rows"] = outcome.rows;
        j["joined"] = outcome.joined;
        j["unmatched_rows"] = outcome.unmatched_rows;
        j["duplicate_dois"] = outcome.duplicate_dois;
        j["unavailable"] = outcome.unavailable;
        j["joined_path"] = outcome.joined_path;
        return j.dump(2);
    });
}

refaudit_status refaudit_run_audit(refaudit_session* session, char** out_json,
                                   int* out_any_sneaked) {
    if (out_any_sneaked) *out_any_sneaked = 0;
    return guarded(session, out_json, [&]() {
        if (!session) raise(errc::invalid_argument, "session must not be null");
        auto outcome = session->pipeline->run_audit();
        if (out_any_sneaked) *out_any_sneaked = outcome.any_sneaked ? 1 : 0;
        ojson j = ojson::object();
        j["any_sneaked"] = outcome.any_sneaked;
        ojson tables = ojson::array();
        for (const auto& block : outcome.report.tables) {
            ojson t = ojson::object();
            t["comparator"] = source_kind_name(block.table.comparator);
            t["articles"] = block.table.totals.articles;
            t["ok"] = block.table.row(AuditStatus::ok).article_count;
            t["sneaked"] = block.table.row(AuditStatus::sneaked).article_count;
            t["missing"] = block.table.row(AuditStatus::missing).article_count;
            t["delta_sneaked"] = block.table.delta_sneaked;
            t["delta_missing"] = block.table.delta_missing;
            t["refs_in_html"] = block.table.totals.refs_in_html;
            t["refs_in_source"] = block.table.totals.refs_in_source;
            tables.push_back(std::move(t));
        }
        j["tables"] = std::move(tables);
        j["flagged"] = outcome.report.flagged.size();
        j["skipped"] = outcome.skipped;
        ojson names = ojson::array();
        for (const auto& [name, count] : outcome.low_confidence_names)
            names.push_back(ojson::array({name, count}));
        j["low_confidence_names"] = std::move(names);
        j["report_md_path"] = outcome.report_md_path;
        j["report_json_path"] = outcome.report_json_path;
        j["flagged_csv_path"] = outcome.flagged_csv_path;
        return j.dump(2);
    });
}

refaudit_status refaudit_rerender_report(const char* report_json_path, const char* out_dir,
                                         char** out_json) {
    return guarded(nullptr, out_json, [&]() {
        auto written = rerender_report(require(report_json_path, "report_json_path"),
                                       require(out_dir, "out_dir"));
        ojson j = ojson::object();
        j["written"] = written;
        return j.dump(2);
    });
}

refaudit_status refaudit_normalize_doi(const char* raw, char** out_doi) {
    return guarded(nullptr, out_doi,
                   [&]() { return Doi::parse(require(raw, "raw")).value(); });
}

refaudit_status refaudit_parse_depositor_report(const char* document, char** out_json) {
    return guarded(nullptr, out_json, [&]() {
        auto report = parse_depositor_report(require(document, "document"));
        ojson j = ojson::object();
        j["publication_id"] = report.publication_id;
        j["journal_title"] = report.journal_title;
        ojson dois = ojson::array();
        for (const auto& doi : report.dois) dois.push_back(doi.value());
        j["dois"] = std::move(dois);
        return j.dump(2);
    });
}

refaudit_status refaudit_parse_work(const char* doi, const char* body, char** out_json) {
    return guarded(nullptr, out_json, [&]() {
        auto parsed = parse_work(Doi::parse(require(doi, "doi")), require(body, "body"), "");
        auto consistency = check_count_consistency(parsed);
        ojson j = ojson::object();
        j["doi"] = parsed.doi.value();
        j["declared_reference_count"] = parsed.declared_reference_count;
        j["is_referenced_by_count"] = parsed.is_referenced_by_count;
        j["consistent"] = consistency.consistent;
        j["references"] = reference_list_to_json(parsed.references);
        return j.dump(2);
    });
}

refaudit_status refaudit_extract_references(const char* html, const char* adapter_json,
                                            char** out_json) {
    return guarded(nullptr, out_json, [&]() {
        auto j = parse_json(require(adapter_json, "adapter_json"), "adapter");
        const nlohmann::json* entry = &j;
        if (j.is_object() && j.contains("adapters")) {
            if (!j.at("adapters").is_array() || j.at("adapters").empty())
                raise(errc::invalid_argument, "adapter config has no adapters");
            entry = &j.at("adapters").at(0);
        }
        AdapterSpec spec;
        spec.journal_id = entry->value("journal_id", std::string("*"));
        spec.url_template = entry->value("url_template", std::string("{doi}"));
        spec.rule.container_hint = entry->value("container_hint", std::string());
        spec.rule.item_hint = entry->value("item_hint", std::string());
        if (entry->contains("strip_patterns"))
            for (const auto& p : entry->at("strip_patterns"))
                spec.rule.strip_patterns.push_back(p.get<std::string>());
        validate_adapter(spec);
        auto refs = extract_references(require(html, "html"), spec);
        ojson out = ojson::object();
        out["references"] = reference_list_to_json(refs);
        return out.dump(2);
    });
}

refaudit_status refaudit_split_reference_cell(const char* cell, char** out_json) {
    return guarded(nullptr, out_json, [&]() {
        auto result = split_reference_cell(require(cell, "cell"));
        ojson j = ojson::object();
        j["fallback_single"] = result.fallback_single;
        j["references"] = reference_list_to_json(result.references);
        return j.dump(2);
    });
}

refaudit_status refaudit_detect_duplication(const char* refs_json, char** out_json) {
    return guarded(nullptr, out_json, [&]() {
        auto refs = references_from_text(refs_json, "refs_json");
        auto result = detect_duplication(canonicalize_list(refs));
        ojson j = ojson::object();
        j["factor"] = result.factor;
        j["block_length"] = result.block_length;
        j["repeated_keys"] = result.repeated_keys;
        return j.dump(2);
    });
}

refaudit_status refaudit_align_lists(const char* refs_a_json, const char* refs_b_json,
                                     double threshold, char** out_json) {
    return guarded(nullptr, out_json, [&]() {
        auto a = canonicalize_list(references_from_text(refs_a_json, "refs_a_json"));
        auto b = canonicalize_list(references_from_text(refs_b_json, "refs_b_json"));
        auto alignment = align(a, b, threshold);
        ojson j = ojson::object();
        ojson matched = ojson::array();
        for (const auto& pair : alignment.matched)
            matched.push_back(ojson::array({pair.index_a, pair.index_b, pair.similarity}));
        j["matched"] = std::move(matched);
        j["only_in_a"] = alignment.only_in_a;
        j["only_in_b"] = alignment.only_in_b;
        return j.dump(2);
    });
}

refaudit_status refaudit_compute_delta(const char* doi, const char* comparator,
                                       size_t refs_shown, size_t refs_registered,
                                       char** out_json) {
    return guarded(nullptr, out_json, [&]() {
        auto kind = source_kind_from_name(require(comparator, "comparator"));
        if (!kind || !is_comparator(*kind))
            raise(errc::invalid_argument, "comparator must be crossref or dimensions");
        auto result =
            DeltaResult::make(Doi::parse(require(doi, "doi")), *kind, refs_shown, refs_registered);
        return to_json(result).dump(2);
    });
}

} // extern "C"
