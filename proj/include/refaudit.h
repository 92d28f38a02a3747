/* refaudit — reference-list integrity auditing.
 *
 * C surface over the audit core: compare the reference lists a publisher
 * shows on its article pages against the lists registered with the DOI
 * registry and listed by a bibliometric platform, and flag publications
 * whose registered metadata carries extra ("sneaked") or dropped ("lost")
 * references.
 *
 * Conventions:
 *   - Functions return REFAUDIT_OK or an error status; on error, a
 *     human-readable message is available via refaudit_last_error() (and
 *     refaudit_session_last_error() for session calls).
 *   - Output strings (char**) are heap-allocated; release them with
 *     refaudit_string_free(). They are UTF-8, NUL-terminated JSON unless
 *     documented otherwise.
 *   - Sessions are not thread-safe; use one per thread. Stateless helpers
 *     are safe to call concurrently.
 */
#ifndef REFAUDIT_H
#define REFAUDIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef REFAUDIT_API
#if defined(_WIN32)
#define REFAUDIT_API __declspec(dllexport)
#else
#define REFAUDIT_API __attribute__((visibility("default")))
#endif
#endif

typedef enum refaudit_status {
    REFAUDIT_OK = 0,
    REFAUDIT_E_MALFORMED_DOI,
    REFAUDIT_E_UNRECOGNIZED_REPORT_FORMAT,
    REFAUDIT_E_NOT_REGISTERED,
    REFAUDIT_E_TRANSPORT,
    REFAUDIT_E_PARSE,
    REFAUDIT_E_CACHE_MISS,
    REFAUDIT_E_EXTRACTION_FAILED,
    REFAUDIT_E_HEADER_MISMATCH,
    REFAUDIT_E_ROW_PARSE,
    REFAUDIT_E_ENCODING,
    REFAUDIT_E_DUPLICATE_ROW,
    REFAUDIT_E_SOURCE_UNAVAILABLE,
    REFAUDIT_E_MIXED_COMPARATORS,
    REFAUDIT_E_DIVISION_BY_ZERO_CORPUS,
    REFAUDIT_E_INVALID_ARGUMENT,
    REFAUDIT_E_IO,
    REFAUDIT_E_INTERNAL
} refaudit_status;

/* Opaque pipeline session bound to one run configuration. */
typedef struct refaudit_session refaudit_session;

/* Library version string, e.g. "1.0.0". Static storage; do not free. */
REFAUDIT_API const char* refaudit_version(void);

/* Stable name for a status code, e.g. "NotRegistered". Static storage. */
REFAUDIT_API const char* refaudit_status_name(refaudit_status status);

/* Releases a string returned through a char** out-parameter. NULL is ok. */
REFAUDIT_API void refaudit_string_free(char* s);

/* Message for the most recent failure on this thread. Static storage,
 * overwritten by the next failing call on the same thread. */
REFAUDIT_API const char* refaudit_last_error(void);

/* ---- Session lifecycle ------------------------------------------------ */

/* Creates a session from a JSON run-config document. Recognized keys:
 *   depositor_pubids (array of text), doi_file, cache_dir, adapters_file,
 *   dimensions_export, comparators (array of "crossref"/"dimensions"),
 *   threshold (0,1], rate_limit (>0 requests/sec), offline (bool),
 *   fixed_clock (ISO-8601 text), api_base, report_base, contact, workers,
 *   out_dir, corpus_id.
 * Unknown keys are rejected. On failure *out_session is NULL. */
REFAUDIT_API refaudit_status refaudit_session_new(const char* config_json,
                                                  refaudit_session** out_session);

REFAUDIT_API void refaudit_session_free(refaudit_session* session);

/* Message for the most recent failure on this session. */
REFAUDIT_API const char* refaudit_session_last_error(const refaudit_session* session);

/* ---- Pipeline stages --------------------------------------------------
 * Each stage writes its products under the session's cache/output
 * directories and returns a JSON summary. */

/* Expands depositor pubids and/or the DOI list file into the cache's
 * inventory. Summary: {"dois", "per_pubid", "inventory_path"}. */
REFAUDIT_API refaudit_status refaudit_run_inventory(refaudit_session* session,
                                                    char** out_json);

/* Fetches registry records and article pages for every inventory DOI into
 * the cache (no network in offline mode — cached copies only). Summary:
 * {"works_fetched", "works_from_cache", "pages_fetched",
 *  "pages_from_cache", "not_registered", "failures": [[doi, reason]...]}. */
REFAUDIT_API refaudit_status refaudit_run_harvest(refaudit_session* session, char** out_json);

/* Parses the bibliometric CSV export and joins it onto the inventory.
 * Summary: {"rows", "joined", "unmatched_rows", "duplicate_dois",
 *           "unavailable", "joined_path"}. */
REFAUDIT_API refaudit_status refaudit_run_ingest(refaudit_session* session, char** out_json);

/* Audits cached snapshots (never touches the network or mutates the
 * cache) and writes report.md / report.json / flagged.csv into out_dir.
 * *out_any_sneaked (optional) is set to 1 when some publication carries
 * extra registered references. Summary: {"any_sneaked", "tables",
 * "flagged", "skipped", "low_confidence_names", file paths}. */
REFAUDIT_API refaudit_status refaudit_run_audit(refaudit_session* session, char** out_json,
                                                int* out_any_sneaked);

/* Re-renders report.md / report.json / flagged.csv from an existing
 * report.json. Summary: {"written": [paths...]}. */
REFAUDIT_API refaudit_status refaudit_rerender_report(const char* report_json_path,
                                                      const char* out_dir, char** out_json);

/* ---- Stateless helpers ------------------------------------------------ */

/* Normalizes a DOI (bare name, "doi:" label, or resolver URL) to its
 * lowercase registered form. Output is the plain DOI, not JSON. */
REFAUDIT_API refaudit_status refaudit_normalize_doi(const char* raw, char** out_doi);

/* Parses a depositor report page. Output:
 * {"publication_id", "journal_title", "dois": [...]}. */
REFAUDIT_API refaudit_status refaudit_parse_depositor_report(const char* document,
                                                             char** out_json);

/* Parses a registry works-endpoint payload. Output: {"doi",
 * "declared_reference_count", "is_referenced_by_count", "consistent",
 * "references": [{"raw", "structured"?}...]}. */
REFAUDIT_API refaudit_status refaudit_parse_work(const char* doi, const char* body,
                                                 char** out_json);

/* Extracts the reference list from an article page. adapter_json holds
 * {"container_hint", "item_hint", "strip_patterns"? } (a full adapter
 * object also works). Output: {"references": [{"raw"}...]}. */
REFAUDIT_API refaudit_status refaudit_extract_references(const char* html,
                                                         const char* adapter_json,
                                                         char** out_json);

/* Splits one cited-references export cell. Output:
 * {"fallback_single", "references": [{"raw", "structured"?}...]}. */
REFAUDIT_API refaudit_status refaudit_split_reference_cell(const char* cell, char** out_json);

/* Whole-list duplication check over a JSON array of reference records
 * (objects with "raw", or bare strings). Output:
 * {"factor", "block_length", "repeated_keys": [...]}. */
REFAUDIT_API refaudit_status refaudit_detect_duplication(const char* refs_json,
                                                         char** out_json);

/* Fuzzy alignment between two reference lists (same input shape as
 * refaudit_detect_duplication). Output: {"matched": [[ia, ib, sim]...],
 * "only_in_a": [...], "only_in_b": [...]}. */
REFAUDIT_API refaudit_status refaudit_align_lists(const char* refs_a_json,
                                                  const char* refs_b_json, double threshold,
                                                  char** out_json);

/* Count-level discrepancy for one publication: refs_registered −
 * refs_shown, classified ok/sneaked/missing. comparator is "crossref" or
 * "dimensions". Output: {"doi", "comparator", "refs_in_html",
 * "refs_in_source", "delta", "status"}. */
REFAUDIT_API refaudit_status refaudit_compute_delta(const char* doi, const char* comparator,
                                                    size_t refs_shown, size_t refs_registered,
                                                    char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* REFAUDIT_H */
