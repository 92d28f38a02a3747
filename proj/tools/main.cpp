// Command-line front end for the reference-audit library. Talks to the
// shared library through its C surface only; everything here is argument
// plumbing and summary printing.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <refaudit.h>

namespace {

using nlohmann::json;

// Options gathered from flags; only explicitly set ones are forwarded so
// library defaults and config-file values survive.
struct Options {
    std::string config_path;
    std::string cache_dir;
    std::string adapters;
    std::string doi_file;
    std::string dimensions_export;
    std::string out_dir;
    std::string api_base;
    std::string report_base;
    std::string contact;
    std::string fixed_clock;
    std::string corpus_id;
    std::vector<std::string> pubids;
    std::vector<std::string> comparators;
    double threshold = 0.0;
    double rate_limit = 0.0;
    int workers = 0;
    bool offline = false;
};

// Layers one run configuration document: defaults (library-side) <- config
// file <- environment <- flags.
json effective_config(const CLI::App& app, const Options& opts) {
    json config = json::object();
    if (!opts.config_path.empty()) {
        std::FILE* f = std::fopen(opts.config_path.c_str(), "rb");
        if (!f) throw CLI::ValidationError("--config", "cannot read " + opts.config_path);
        std::string body;
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) body.append(buf, n);
        std::fclose(f);
        config = json::parse(body, nullptr, false);
        if (config.is_discarded() || !config.is_object())
            throw CLI::ValidationError("--config", opts.config_path + " is not a JSON object");
    }

    if (const char* dir = std::getenv("REFAUDIT_CACHE_DIR"); dir && *dir)
        config["cache_dir"] = dir;
    if (const char* contact = std::getenv("REFAUDIT_CONTACT"); contact && *contact)
        config["contact"] = contact;

    auto set_if = [&](const char* flag, const char* key, auto&& value) {
        if (app.count(flag) > 0) config[key] = value;
    };
    set_if("--cache-dir", "cache_dir", opts.cache_dir);
    set_if("--adapters", "adapters_file", opts.adapters);
    set_if("--doi-file", "doi_file", opts.doi_file);
    set_if("--dimensions-export", "dimensions_export", opts.dimensions_export);
    set_if("--out", "out_dir", opts.out_dir);
    set_if("--api-base", "api_base", opts.api_base);
    set_if("--report-base", "report_base", opts.report_base);
    set_if("--contact", "contact", opts.contact);
    set_if("--fixed-clock", "fixed_clock", opts.fixed_clock);
    set_if("--corpus-id", "corpus_id", opts.corpus_id);
    set_if("--pubid", "depositor_pubids", opts.pubids);
    set_if("--comparator", "comparators", opts.comparators);
    set_if("--threshold", "threshold", opts.threshold);
    set_if("--rate-limit", "rate_limit", opts.rate_limit);
    set_if("--workers", "workers", opts.workers);
    if (app.count("--offline") > 0) config["offline"] = true;
    return config;
}

struct SessionDeleter {
    void operator()(refaudit_session* s) const { refaudit_session_free(s); }
};
using SessionPtr = std::unique_ptr<refaudit_session, SessionDeleter>;

struct StringDeleter {
    void operator()(char* s) const { refaudit_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

int fail(refaudit_status status, const refaudit_session* session) {
    const char* message = session ? refaudit_session_last_error(session) : refaudit_last_error();
    std::fprintf(stderr, "error (%s): %s\n", refaudit_status_name(status), message);
    return 1;
}

SessionPtr open_session(const json& config, int& exit_code) {
    refaudit_session* raw = nullptr;
    const auto status = refaudit_session_new(config.dump().c_str(), &raw);
    if (status != REFAUDIT_OK) {
        exit_code = fail(status, nullptr);
        return nullptr;
    }
    return SessionPtr(raw);
}

json parse_summary(const char* text) {
    auto j = json::parse(text, nullptr, false);
    return j.is_discarded() ? json::object() : j;
}

int cmd_inventory(const json& config) {
    int exit_code = 0;
    auto session = open_session(config, exit_code);
    if (!session) return exit_code;
    char* out = nullptr;
    const auto status = refaudit_run_inventory(session.get(), &out);
    CString guard(out);
    if (status != REFAUDIT_OK) return fail(status, session.get());
    const auto summary = parse_summary(out);
    for (const auto& [pubid, count] : summary.value("per_pubid", json::object()).items())
        std::printf("%s: %lld DOIs\n", pubid.c_str(), count.get<long long>());
    std::printf("inventory: %lld DOIs -> %s\n", summary.value("dois", 0LL),
                summary.value("inventory_path", "").c_str());
    return 0;
}

int cmd_harvest(const json& config) {
    int exit_code = 0;
    auto session = open_session(config, exit_code);
    if (!session) return exit_code;
    char* out = nullptr;
    const auto status = refaudit_run_harvest(session.get(), &out);
    CString guard(out);
    if (status != REFAUDIT_OK) return fail(status, session.get());
    const auto summary = parse_summary(out);
    std::printf("works: %lld fetched, %lld cached; pages: %lld fetched, %lld cached; "
                "not registered: %lld\n",
                summary.value("works_fetched", 0LL), summary.value("works_from_cache", 0LL),
                summary.value("pages_fetched", 0LL), summary.value("pages_from_cache", 0LL),
                summary.value("not_registered", 0LL));
    const auto failures = summary.value("failures", json::array());
    for (const auto& f : failures)
        std::fprintf(stderr, "failed %s: %s\n", f.at(0).get<std::string>().c_str(),
                     f.at(1).get<std::string>().c_str());
    return failures.empty() ? 0 : 1;
}

int cmd_ingest(const json& config) {
    int exit_code = 0;
    auto session = open_session(config, exit_code);
    if (!session) return exit_code;
    char* out = nullptr;
    const auto status = refaudit_run_ingest(session.get(), &out);
    CString guard(out);
    if (status != REFAUDIT_OK) return fail(status, session.get());
    const auto summary = parse_summary(out);
    std::printf("export rows: %lld; joined: %lld; unmatched rows: %lld; duplicates: %lld; "
                "unavailable: %lld\n",
                summary.value("rows", 0LL), summary.value("joined", 0LL),
                summary.value("unmatched_rows", 0LL), summary.value("duplicate_dois", 0LL),
                summary.value("unavailable", 0LL));
    std::printf("joined list -> %s\n", summary.value("joined_path", "").c_str());
    return 0;
}

int cmd_audit(const json& config) {
    int exit_code = 0;
    auto session = open_session(config, exit_code);
    if (!session) return exit_code;
    char* out = nullptr;
    int any_sneaked = 0;
    const auto status = refaudit_run_audit(session.get(), &out, &any_sneaked);
    CString guard(out);
    if (status != REFAUDIT_OK) return fail(status, session.get());
    const auto summary = parse_summary(out);
    for (const auto& t : summary.value("tables", json::array())) {
        std::printf("%s: %lld articles | ok %lld, sneaked %lld, missing %lld | extra refs "
                    "+%lld, lost %lld\n",
                    t.value("comparator", "").c_str(), t.value("articles", 0LL),
                    t.value("ok", 0LL), t.value("sneaked", 0LL), t.value("missing", 0LL),
                    t.value("delta_sneaked", 0LL), t.value("delta_missing", 0LL));
    }
    for (const auto& line : summary.value("skipped", json::array()))
        std::fprintf(stderr, "skipped %s\n", line.get<std::string>().c_str());
    std::printf("report -> %s\n", summary.value("report_md_path", "").c_str());
    std::printf("machine report -> %s\n", summary.value("report_json_path", "").c_str());
    std::printf("flagged -> %s\n", summary.value("flagged_csv_path", "").c_str());
    return any_sneaked ? 2 : 0;
}

int cmd_report(const std::string& from, const std::string& out_dir) {
    char* out = nullptr;
    const auto status = refaudit_rerender_report(from.c_str(), out_dir.c_str(), &out);
    CString guard(out);
    if (status != REFAUDIT_OK) return fail(status, nullptr);
    const auto summary = parse_summary(out);
    for (const auto& path : summary.value("written", json::array()))
        std::printf("wrote %s\n", path.get<std::string>().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Audit scholarly reference lists across publisher pages, the DOI registry "
                 "and bibliometric exports"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opts;
    app.add_option("--config", opts.config_path, "JSON run-config file");
    app.add_option("--cache-dir", opts.cache_dir, "snapshot cache directory");
    app.add_option("--adapters", opts.adapters, "per-journal extraction adapter config");
    app.add_option("--doi-file", opts.doi_file, "file with one DOI per line");
    app.add_option("--pubid", opts.pubids, "depositor pubid to expand (repeatable)");
    app.add_option("--dimensions-export", opts.dimensions_export,
                   "bibliometric platform CSV export");
    app.add_option("--comparator", opts.comparators,
                   "source to audit against: crossref or dimensions (repeatable)");
    app.add_option("--threshold", opts.threshold, "similarity threshold in (0,1]");
    app.add_option("--rate-limit", opts.rate_limit, "harvest requests per second");
    app.add_option("--workers", opts.workers, "concurrent fetch workers");
    app.add_option("--out", opts.out_dir, "report output directory");
    app.add_option("--api-base", opts.api_base, "registry works API base URL");
    app.add_option("--report-base", opts.report_base, "depositor report base URL");
    app.add_option("--contact", opts.contact, "contact address for the polite user agent");
    app.add_option("--fixed-clock", opts.fixed_clock,
                   "pin report timestamps to this ISO-8601 time");
    app.add_option("--corpus-id", opts.corpus_id, "corpus label used in reports");
    app.add_flag("--offline", opts.offline, "serve everything from the cache; never fetch");

    auto* inventory =
        app.add_subcommand("inventory", "expand depositor reports / DOI lists into the corpus");
    auto* harvest =
        app.add_subcommand("harvest", "fetch registry records and article pages into the cache");
    auto* ingest =
        app.add_subcommand("ingest-dimensions", "parse and join the bibliometric export");
    auto* audit = app.add_subcommand("audit", "compare cached sources and write reports");

    std::string report_from;
    std::string report_out = ".";
    auto* report = app.add_subcommand("report", "re-render report files from a report.json");
    report->add_option("--from", report_from, "existing report.json")->required();
    report->add_option("--out-dir", report_out, "directory for re-rendered files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) return cmd_report(report_from, report_out);
        const json config = effective_config(app, opts);
        if (inventory->parsed()) return cmd_inventory(config);
        if (harvest->parsed()) return cmd_harvest(config);
        if (ingest->parsed()) return cmd_ingest(config);
        if (audit->parsed()) return cmd_audit(config);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    }
    return 1;
}
