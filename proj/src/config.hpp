#pragma once

#include <string>
#include <vector>

#include "model.hpp"
#include "refmatch.hpp"

namespace refaudit {

// One audit run's knobs. Precedence when assembling: command-line flags
// over environment variables over config file over these defaults.
struct RunConfig {
    // Corpus definition: depositor pubids to expand and/or an explicit DOI
    // list file. At least one required.
    std::vector<std::string> depositor_pubids;
    std::string doi_file;

    std::string cache_dir = "cache";
    std::string adapters_file;
    std::string dimensions_export;
    std::vector<SourceKind> comparators = {SourceKind::crossref, SourceKind::dimensions};
    double threshold = kDefaultSimilarityThreshold;
    double rate_limit = 1.0; // requests per second
    bool offline = false;
    std::string fixed_clock; // ISO-8601 timestamp pinned into reports; empty = wall clock

    std::string api_base = "https://api.crossref.org";
    std::string report_base = "https://data.crossref.org/depositorreport";
    std::string contact; // mailto for the polite user agent
    int workers = 4;
    std::string out_dir = ".";
    std::string corpus_id = "corpus";

    // Throws Error(invalid_argument) on out-of-range knobs or a missing
    // corpus source.
    void validate() const;

    std::string user_agent() const;
};

// Overlay a JSON config document onto `base`; unknown keys are rejected so
// typos fail loudly.
RunConfig config_from_json(const std::string& json_text, RunConfig base);
RunConfig load_config_file(const std::string& path, RunConfig base);

// REFAUDIT_CACHE_DIR and REFAUDIT_CONTACT.
void apply_env(RunConfig& config);

std::string config_to_json(const RunConfig& config);

} // namespace refaudit
