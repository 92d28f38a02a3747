#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fetcher.hpp"
#include "model.hpp"

namespace refaudit {

// Declarative extraction rule for one journal's page layout. Hints are
// case-insensitive substrings of element opening tags ("<ol", a class
// attribute fragment, ...); a container hint of the form "heading:WORD"
// selects the first list-like block after a heading containing WORD.
struct ExtractionRule {
    std::string container_hint;
    std::string item_hint;
    std::vector<std::string> strip_patterns; // regexes removed from item text
};

struct AdapterSpec {
    std::string journal_id;   // DOI-suffix prefix this adapter serves; "*" = fallback
    std::string url_template; // exactly one {doi} or {suffix} placeholder
    ExtractionRule rule;
    std::string notes; // documents the extraction boundary (what is and isn't an item)
};

// Validates invariants (one placeholder, non-empty hints); throws
// Error(invalid_argument).
void validate_adapter(const AdapterSpec& spec);

struct AdapterConfig {
    std::vector<AdapterSpec> adapters;
};

// Parses the adapter config document (JSON). Throws Error(parse) /
// Error(invalid_argument).
AdapterConfig load_adapter_config(const std::string& json_text);

// Adapter whose journal_id is the longest prefix of the DOI suffix; "*"
// matches anything with length zero. nullptr when nothing matches.
const AdapterSpec* route_adapter(const AdapterConfig& config, const Doi& doi);

// Expands the adapter's url_template for one article.
std::string page_url(const AdapterSpec& spec, const Doi& doi);

// Pulls the version-of-record reference list out of an article page, in
// page order: numbering prefixes stripped, whitespace collapsed, empty
// items dropped. Throws Error(extraction_failed) when the container hint
// matches nothing.
std::vector<ReferenceRecord> extract_references(const std::string& document,
                                                const AdapterSpec& spec);

struct PdfAgreement {
    bool agrees = true;
    bool verified = false; // false when no spot-check count was supplied
};

// Spot-check hook comparing the HTML extraction against a manually
// supplied PDF reference count; absent count means unverified agreement.
PdfAgreement verify_against_pdf_count(std::size_t html_count,
                                      std::optional<std::size_t> pdf_count);

// Article-page fetching over the shared cache/rate-limit machinery.
class PublisherClient {
  public:
    PublisherClient(std::shared_ptr<Fetcher> fetcher, std::shared_ptr<FileStore> pages_store);

    // Returns the page body; snapshots are keyed by DOI.
    std::string fetch_page(const Doi& doi, const AdapterSpec& spec, CachePolicy policy);

  private:
    std::shared_ptr<Fetcher> fetcher_;
    std::shared_ptr<FileStore> pages_store_;
};

} // namespace refaudit
