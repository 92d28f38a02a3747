#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "fetcher.hpp"
#include "model.hpp"

namespace refaudit {

// One journal's minted-DOI listing from the registry's depositor report
// endpoint.
struct DepositorReport {
    std::string publication_id;
    std::string journal_title;
    std::vector<Doi> dois; // normalized, deduplicated, in document order
};

// Parses a depositor report page (loose HTML or plain-text listing).
// Throws Error(unrecognized_report_format) when no DOI lines are found and
// Error(parse) when the page states a total that disagrees with the number
// of distinct DOIs listed.
DepositorReport parse_depositor_report(const std::string& document);

// One registered work as returned by the registry's works endpoint.
struct CrossrefWork {
    Doi doi;
    std::size_t declared_reference_count = 0; // the registry's own counter
    std::vector<ReferenceRecord> references;
    std::size_t is_referenced_by_count = 0;
    std::string fetched_at;
};

// Parses a works-endpoint JSON body. Throws Error(parse) on malformed
// payloads.
CrossrefWork parse_work(const Doi& doi, const std::string& body, std::string fetched_at);

struct CountConsistency {
    bool consistent = true;
    std::size_t declared = 0;
    std::size_t actual = 0;
};

// The registry's own reference counter vs the list it actually returns;
// never raises.
CountConsistency check_count_consistency(const CrossrefWork& work);

// Registry client: works + depositor reports, cached on disk, rate-limited.
class CrossrefClient {
  public:
    struct Endpoints {
        std::string api_base = "https://api.crossref.org";
        std::string report_base = "https://data.crossref.org/depositorreport";
    };

    CrossrefClient(Endpoints endpoints, std::shared_ptr<Fetcher> fetcher,
                   std::shared_ptr<FileStore> works_store,
                   std::shared_ptr<FileStore> reports_store);

    // Raw body is persisted to the works store before parsing, so a parse
    // failure leaves the payload on disk for inspection. Throws
    // Error(not_registered) on a 404, Error(transport) after retries,
    // Error(cache_miss) under offline_only with a cold cache.
    CrossrefWork fetch_work(const Doi& doi, CachePolicy policy);

    DepositorReport fetch_depositor_report(const std::string& pubid, CachePolicy policy);

    std::string work_url(const Doi& doi) const;
    std::string report_url(const std::string& pubid) const;

  private:
    Endpoints endpoints_;
    std::shared_ptr<Fetcher> fetcher_;
    std::shared_ptr<FileStore> works_store_;
    std::shared_ptr<FileStore> reports_store_;
};

} // namespace refaudit
