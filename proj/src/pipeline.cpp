#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "json_conv.hpp"
#include "textutil.hpp"

namespace fs = std::filesystem;

namespace refaudit {

namespace {

std::string slurp_file(const fs::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io, std::string("cannot read ") + what + " at " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

constexpr std::size_t kSneakedSampleLimit = 5;

} // namespace

Pipeline::Pipeline(RunConfig config, std::shared_ptr<HttpTransport> transport,
                   std::shared_ptr<Clock> clock)
    : config_(std::move(config)), transport_(std::move(transport)), clock_(std::move(clock)) {
    config_.validate();
    limiter_ = std::make_shared<RateLimiter>(config_.rate_limit, clock_);
    fetcher_ = std::make_shared<Fetcher>(FetchOptions{config_.user_agent()}, transport_,
                                         limiter_, clock_);
}

CachePolicy Pipeline::harvest_policy() const {
    return config_.offline ? CachePolicy::offline_only : CachePolicy::prefer_cache;
}

std::shared_ptr<Clock> Pipeline::report_clock() const {
    if (config_.fixed_clock.empty()) return clock_;
    return std::make_shared<FixedWallClock>(clock_, config_.fixed_clock);
}

std::string Pipeline::inventory_path() const {
    return (fs::path(config_.cache_dir) / "inventory.txt").string();
}

std::vector<Doi> Pipeline::read_inventory() const {
    const fs::path path = inventory_path();
    if (!fs::exists(path))
        raise(errc::io, "no inventory at " + path.string() + "; run the inventory step first");
    std::ifstream in(path);
    std::vector<Doi> dois;
    std::set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        Doi doi = Doi::parse(t);
        if (seen.insert(doi.value()).second) dois.push_back(std::move(doi));
    }
    return dois;
}

InventoryOutcome Pipeline::run_inventory() {
    InventoryOutcome outcome;
    std::set<std::string> seen;
    auto add = [&](const Doi& doi) {
        if (seen.insert(doi.value()).second) outcome.dois.push_back(doi);
    };

    if (!config_.depositor_pubids.empty()) {
        auto works = std::make_shared<FileStore>(fs::path(config_.cache_dir) / "crossref",
                                                 ".json");
        auto reports = std::make_shared<FileStore>(fs::path(config_.cache_dir) / "depositor",
                                                   ".html");
        CrossrefClient client({config_.api_base, config_.report_base}, fetcher_, works,
                              reports);
        for (const auto& pubid : config_.depositor_pubids) {
            auto report = client.fetch_depositor_report(pubid, harvest_policy());
            outcome.per_pubid[pubid] = report.dois.size();
            for (const auto& doi : report.dois) add(doi);
        }
    }

    if (!config_.doi_file.empty()) {
        std::ifstream in(config_.doi_file);
        if (!in) raise(errc::io, "cannot read DOI list file " + config_.doi_file);
        std::string line;
        while (std::getline(in, line)) {
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            add(Doi::parse(t));
        }
    }

    std::string body;
    for (const auto& doi : outcome.dois) body += doi.value() + "\n";
    atomic_write(inventory_path(), body);
    outcome.inventory_path = inventory_path();
    return outcome;
}

HarvestOutcome Pipeline::run_harvest() {
    if (config_.adapters_file.empty())
        raise(errc::invalid_argument, "adapters_file is required to harvest article pages");
    const auto adapters =
        load_adapter_config(slurp_file(config_.adapters_file, "adapter config"));

    const auto dois = read_inventory();
    auto works =
        std::make_shared<FileStore>(fs::path(config_.cache_dir) / "crossref", ".json");
    auto reports =
        std::make_shared<FileStore>(fs::path(config_.cache_dir) / "depositor", ".html");
    auto pages = std::make_shared<FileStore>(fs::path(config_.cache_dir) / "pages", ".html");
    CrossrefClient registry({config_.api_base, config_.report_base}, fetcher_, works, reports);
    PublisherClient publisher(fetcher_, pages);

    HarvestOutcome outcome;
    std::mutex outcome_mutex;
    std::atomic<std::size_t> cursor{0};
    const CachePolicy policy = harvest_policy();

    auto worker = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= dois.size()) return;
            const Doi& doi = dois[i];

            const bool work_cached = works->has(doi);
            try {
                registry.fetch_work(doi, policy);
                std::lock_guard lock(outcome_mutex);
                if (work_cached)
                    ++outcome.works_from_cache;
                else
                    ++outcome.works_fetched;
            } catch (const Error& e) {
                std::lock_guard lock(outcome_mutex);
                if (e.code() == errc::not_registered)
                    ++outcome.not_registered;
                else
                    outcome.failures.emplace_back(doi.value(), e.what());
            }

            const AdapterSpec* adapter = route_adapter(adapters, doi);
            if (!adapter) {
                std::lock_guard lock(outcome_mutex);
                outcome.failures.emplace_back(doi.value(), "no adapter for this DOI suffix");
                continue;
            }
            const bool page_cached = pages->has(doi);
            try {
                publisher.fetch_page(doi, *adapter, policy);
                std::lock_guard lock(outcome_mutex);
                if (page_cached)
                    ++outcome.pages_from_cache;
                else
                    ++outcome.pages_fetched;
            } catch (const Error& e) {
                std::lock_guard lock(outcome_mutex);
                outcome.failures.emplace_back(doi.value(), e.what());
            }
        }
    };

    const std::size_t thread_count =
        std::max<std::size_t>(1, std::min<std::size_t>(config_.workers, dois.size()));
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    std::sort(outcome.failures.begin(), outcome.failures.end());
    return outcome;
}

IngestOutcome Pipeline::run_ingest() {
    if (config_.dimensions_export.empty())
        raise(errc::invalid_argument, "no bibliometric export configured");
    std::ifstream in(config_.dimensions_export, std::ios::binary);
    if (!in) raise(errc::io, "cannot read export file " + config_.dimensions_export);

    const auto rows = parse_export(in);
    const auto inventory = read_inventory();
    const std::set<Doi> corpus(inventory.begin(), inventory.end());
    auto join = join_to_corpus(rows, corpus);

    ojson j = ojson::object();
    j["rows"] = rows.size();
    j["unmatched_rows"] = join.unmatched_rows.size();
    ojson duplicates = ojson::array();
    for (const auto& doi : join.duplicate_dois) duplicates.push_back(doi.value());
    j["duplicate_dois"] = std::move(duplicates);
    ojson fallback = ojson::array();
    for (const auto& doi : join.fallback_cells) fallback.push_back(doi.value());
    j["fallback_cells"] = std::move(fallback);
    ojson joined = ojson::object();
    for (const auto& [doi, refs] : join.joined) joined[doi.value()] = reference_list_to_json(refs);
    j["joined"] = std::move(joined);

    const fs::path path = fs::path(config_.cache_dir) / "dimensions" / "joined.json";
    atomic_write(path, j.dump(2) + "\n");

    IngestOutcome outcome;
    outcome.rows = rows.size();
    outcome.joined = join.joined.size();
    outcome.unmatched_rows = join.unmatched_rows.size();
    outcome.duplicate_dois = join.duplicate_dois.size();
    outcome.unavailable = join.unavailable.size();
    outcome.joined_path = path.string();
    return outcome;
}

AuditOutcome Pipeline::run_audit() {
    if (config_.adapters_file.empty())
        raise(errc::invalid_argument, "adapters_file is required to audit article pages");
    const auto adapters =
        load_adapter_config(slurp_file(config_.adapters_file, "adapter config"));
    const auto dois = read_inventory();

    const FileStore pages(fs::path(config_.cache_dir) / "pages", ".html", /*read_only=*/true);
    const FileStore works(fs::path(config_.cache_dir) / "crossref", ".json",
                          /*read_only=*/true);

    const bool want_crossref = std::count(config_.comparators.begin(),
                                          config_.comparators.end(), SourceKind::crossref) > 0;
    const bool want_dimensions =
        std::count(config_.comparators.begin(), config_.comparators.end(),
                   SourceKind::dimensions) > 0;

    // Ingested export, keyed by DOI.
    std::map<std::string, std::vector<ReferenceRecord>> dimensions_lists;
    std::size_t unmatched_rows = 0;
    if (want_dimensions) {
        const fs::path joined_path = fs::path(config_.cache_dir) / "dimensions" / "joined.json";
        if (!fs::exists(joined_path))
            raise(errc::io, "no ingested export at " + joined_path.string() +
                                "; run the export ingest step first");
        auto j = parse_json(slurp_file(joined_path, "ingested export"), "ingested export");
        unmatched_rows = j.value("unmatched_rows", 0);
        for (const auto& [key, value] : j.at("joined").items())
            dimensions_lists[key] = reference_list_from_json(value);
    }

    const SourceKind beneficiary_comparator =
        want_crossref ? SourceKind::crossref : SourceKind::dimensions;

    AuditOutcome outcome;
    std::map<SourceKind, std::vector<DeltaResult>> deltas;
    std::set<Doi> unavailable_union;
    std::vector<ReferenceRecord> sneaked_pool;

    for (const Doi& doi : dois) {
        auto page = pages.read(doi);
        if (!page) {
            outcome.skipped.push_back(doi.value() + ": no cached article page");
            unavailable_union.insert(doi);
            continue;
        }
        const AdapterSpec* adapter = route_adapter(adapters, doi);
        if (!adapter) {
            outcome.skipped.push_back(doi.value() + ": no adapter for this DOI suffix");
            unavailable_union.insert(doi);
            continue;
        }

        PublicationRecord pub{doi, {}};
        try {
            pub.lists[SourceKind::publisher] = extract_references(*page, *adapter);
        } catch (const Error& e) {
            outcome.skipped.push_back(doi.value() + ": " + e.what());
            unavailable_union.insert(doi);
            continue;
        }

        if (want_crossref) {
            if (auto body = works.read(doi)) {
                try {
                    pub.lists[SourceKind::crossref] =
                        parse_work(doi, *body, works.fetched_at(doi).value_or("")).references;
                } catch (const Error& e) {
                    outcome.skipped.push_back(doi.value() + ": " + e.what());
                    unavailable_union.insert(doi);
                }
            } else {
                outcome.skipped.push_back(doi.value() + ": no cached registry record");
                unavailable_union.insert(doi);
            }
        }
        if (want_dimensions) {
            auto it = dimensions_lists.find(doi.value());
            if (it != dimensions_lists.end()) {
                pub.lists[SourceKind::dimensions] = it->second;
            } else {
                outcome.skipped.push_back(doi.value() + ": not in the bibliometric export");
                unavailable_union.insert(doi);
            }
        }

        for (SourceKind comparator : config_.comparators) {
            if (!pub.has(comparator)) continue;
            DeltaResult delta = compute_delta(pub, comparator);
            deltas[comparator].push_back(delta);
            if (delta.delta == 0) continue;

            FlaggedEntry entry{doi, comparator, delta.s, delta.r,
                               delta.delta, delta.status};
            entry.duplication_factor =
                detect_duplication(canonicalize_list(pub.lists.at(comparator))).factor;
            if (delta.status == AuditStatus::sneaked) {
                auto sneaked =
                    extract_sneaked_references(pub, comparator, config_.threshold);
                for (std::size_t i = 0;
                     i < sneaked.size() && i < kSneakedSampleLimit; ++i)
                    entry.sneaked_sample.push_back(sneaked[i].raw);
                if (comparator == beneficiary_comparator)
                    sneaked_pool.insert(sneaked_pool.end(), sneaked.begin(), sneaked.end());
            }
            outcome.report.flagged.push_back(std::move(entry));
        }
    }

    for (SourceKind comparator : config_.comparators) {
        TableBlock block;
        block.table = aggregate(deltas[comparator], comparator);
        if (block.table.totals.refs_in_html > 0 && block.table.totals.refs_in_source > 0)
            block.rates = compute_rates(block.table);
        outcome.report.tables.push_back(std::move(block));
    }

    auto analysis = beneficiary_profile(sneaked_pool);
    outcome.report.beneficiaries = std::move(analysis.profile);
    outcome.low_confidence_names = std::move(analysis.low_confidence_names);

    outcome.report.corpus_id = config_.corpus_id;
    outcome.report.generated_at = report_clock()->wall_iso8601();
    outcome.report.reconciliation.unavailable.assign(unavailable_union.begin(),
                                                     unavailable_union.end());
    outcome.report.reconciliation.unmatched_rows = unmatched_rows;
    outcome.report.flagged = sorted_flagged(outcome.report);
    outcome.any_sneaked =
        std::any_of(outcome.report.flagged.begin(), outcome.report.flagged.end(),
                    [](const FlaggedEntry& e) { return e.status == AuditStatus::sneaked; });

    const fs::path out_dir = config_.out_dir;
    fs::create_directories(out_dir);
    atomic_write(out_dir / "report.md", render_markdown(outcome.report));
    atomic_write(out_dir / "report.json", render_json(outcome.report));
    atomic_write(out_dir / "flagged.csv", render_flagged_csv(outcome.report));
    outcome.report_md_path = (out_dir / "report.md").string();
    outcome.report_json_path = (out_dir / "report.json").string();
    outcome.flagged_csv_path = (out_dir / "flagged.csv").string();
    return outcome;
}

std::vector<std::string> rerender_report(const std::string& report_json_path,
                                         const std::string& out_dir) {
    AuditReport report = parse_report_json(slurp_file(report_json_path, "audit report"));
    fs::create_directories(out_dir);
    const fs::path dir = out_dir;
    atomic_write(dir / "report.md", render_markdown(report));
    atomic_write(dir / "report.json", render_json(report));
    atomic_write(dir / "flagged.csv", render_flagged_csv(report));
    return {(dir / "report.md").string(), (dir / "report.json").string(),
            (dir / "flagged.csv").string()};
}

} // namespace refaudit
