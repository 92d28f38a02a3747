#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "audit.hpp"
#include "clock.hpp"
#include "config.hpp"
#include "crossref.hpp"
#include "dimensions.hpp"
#include "http_transport.hpp"
#include "publisher.hpp"
#include "report.hpp"

namespace refaudit {

struct InventoryOutcome {
    std::vector<Doi> dois;
    std::map<std::string, std::size_t> per_pubid;
    std::string inventory_path;
};

struct HarvestOutcome {
    std::size_t works_fetched = 0;
    std::size_t works_from_cache = 0;
    std::size_t pages_fetched = 0;
    std::size_t pages_from_cache = 0;
    std::size_t not_registered = 0;
    std::vector<std::pair<std::string, std::string>> failures; // doi, reason
};

struct IngestOutcome {
    std::size_t rows = 0;
    std::size_t joined = 0;
    std::size_t unmatched_rows = 0;
    std::size_t duplicate_dois = 0;
    std::size_t unavailable = 0;
    std::string joined_path;
};

struct AuditOutcome {
    AuditReport report;
    bool any_sneaked = false;
    // DOIs excluded per source, with the reason ("no cached page", ...).
    std::vector<std::string> skipped;
    std::vector<std::pair<std::string, std::size_t>> low_confidence_names;
    std::string report_md_path;
    std::string report_json_path;
    std::string flagged_csv_path;
};

// End-to-end orchestration over a cache directory:
//   inventory -> harvest -> ingest -> audit -> report files.
// The audit stage reads snapshots only — it never touches the network and
// never writes into the cache, so offline re-runs are reproducible.
class Pipeline {
  public:
    Pipeline(RunConfig config, std::shared_ptr<HttpTransport> transport,
             std::shared_ptr<Clock> clock);

    // Expands depositor pubids / the DOI list file into
    // <cache_dir>/inventory.txt (deduplicated, normalized, stable order).
    InventoryOutcome run_inventory();

    // Fetches registry works and article pages for every inventory DOI
    // into the cache. Individual failures are collected, not fatal.
    HarvestOutcome run_harvest();

    // Parses the bibliometric export and joins it onto the inventory;
    // writes <cache_dir>/dimensions/joined.json.
    IngestOutcome run_ingest();

    // Computes tables, flagged entries, beneficiary profile and
    // reconciliation from cached snapshots; writes report.md, report.json
    // and flagged.csv into out_dir.
    AuditOutcome run_audit();

    const RunConfig& config() const { return config_; }
    std::string inventory_path() const;
    std::vector<Doi> read_inventory() const;

  private:
    CachePolicy harvest_policy() const;
    std::shared_ptr<Clock> report_clock() const;

    RunConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    std::shared_ptr<Clock> clock_;
    std::shared_ptr<RateLimiter> limiter_;
    std::shared_ptr<Fetcher> fetcher_;
};

// Renders md/csv (and a normalized json) from an existing report.json;
// returns the written paths.
std::vector<std::string> rerender_report(const std::string& report_json_path,
                                         const std::string& out_dir);

} // namespace refaudit
