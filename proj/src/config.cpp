#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "json_conv.hpp"
#include "version.hpp"

namespace refaudit {

void RunConfig::validate() const {
    if (depositor_pubids.empty() && doi_file.empty())
        raise(errc::invalid_argument,
              "no corpus source: give depositor pubids or a DOI list file");
    if (!(threshold > 0.0 && threshold <= 1.0))
        raise(errc::invalid_argument, "threshold must be in (0, 1]");
    if (!(rate_limit > 0.0))
        raise(errc::invalid_argument, "rate limit must be positive");
    if (workers < 1) raise(errc::invalid_argument, "workers must be at least 1");
    if (comparators.empty())
        raise(errc::invalid_argument, "at least one comparator source required");
    for (SourceKind kind : comparators)
        if (!is_comparator(kind))
            raise(errc::invalid_argument, "comparators must be crossref or dimensions");
    if (cache_dir.empty()) raise(errc::invalid_argument, "cache_dir must be non-empty");
}

std::string RunConfig::user_agent() const {
    std::string ua = std::string("refaudit/") + kVersion;
    if (!contact.empty()) ua += " (mailto:" + contact + ")";
    return ua;
}

RunConfig config_from_json(const std::string& json_text, RunConfig base) {
    auto j = parse_json(json_text, "run config");
    if (!j.is_object()) raise(errc::parse, "run config must be a JSON object");

    static const std::set<std::string> known = {
        "depositor_pubids", "doi_file",   "cache_dir",  "adapters_file",
        "dimensions_export", "comparators", "threshold",  "rate_limit",
        "offline",          "fixed_clock", "api_base",   "report_base",
        "contact",          "workers",     "out_dir",    "corpus_id"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key))
            raise(errc::invalid_argument, "run config: unknown key '" + key + "'");
    }

    if (j.contains("depositor_pubids")) {
        base.depositor_pubids.clear();
        for (const auto& p : j.at("depositor_pubids"))
            base.depositor_pubids.push_back(p.get<std::string>());
    }
    if (j.contains("doi_file")) base.doi_file = j.at("doi_file").get<std::string>();
    if (j.contains("cache_dir")) base.cache_dir = j.at("cache_dir").get<std::string>();
    if (j.contains("adapters_file"))
        base.adapters_file = j.at("adapters_file").get<std::string>();
    if (j.contains("dimensions_export"))
        base.dimensions_export = j.at("dimensions_export").get<std::string>();
    if (j.contains("comparators")) {
        base.comparators.clear();
        for (const auto& c : j.at("comparators")) {
            auto kind = source_kind_from_name(c.get<std::string>());
            if (!kind || !is_comparator(*kind))
                raise(errc::invalid_argument,
                      "run config: bad comparator '" + c.get<std::string>() + "'");
            base.comparators.push_back(*kind);
        }
    }
    if (j.contains("threshold")) base.threshold = j.at("threshold").get<double>();
    if (j.contains("rate_limit")) base.rate_limit = j.at("rate_limit").get<double>();
    if (j.contains("offline")) base.offline = j.at("offline").get<bool>();
    if (j.contains("fixed_clock")) base.fixed_clock = j.at("fixed_clock").get<std::string>();
    if (j.contains("api_base")) base.api_base = j.at("api_base").get<std::string>();
    if (j.contains("report_base")) base.report_base = j.at("report_base").get<std::string>();
    if (j.contains("contact")) base.contact = j.at("contact").get<std::string>();
    if (j.contains("workers")) base.workers = j.at("workers").get<int>();
    if (j.contains("out_dir")) base.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("corpus_id")) base.corpus_id = j.at("corpus_id").get<std::string>();
    return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io, "cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str(), std::move(base));
}

void apply_env(RunConfig& config) {
    if (const char* dir = std::getenv("REFAUDIT_CACHE_DIR"); dir && *dir)
        config.cache_dir = dir;
    if (const char* contact = std::getenv("REFAUDIT_CONTACT"); contact && *contact)
        config.contact = contact;
}

std::string config_to_json(const RunConfig& config) {
    ojson j = ojson::object();
    j["depositor_pubids"] = config.depositor_pubids;
    j["doi_file"] = config.doi_file;
    j["cache_dir"] = config.cache_dir;
    j["adapters_file"] = config.adapters_file;
    j["dimensions_export"] = config.dimensions_export;
    ojson comparators = ojson::array();
    for (SourceKind kind : config.comparators) comparators.push_back(source_kind_name(kind));
    j["comparators"] = std::move(comparators);
    j["threshold"] = config.threshold;
    j["rate_limit"] = config.rate_limit;
    j["offline"] = config.offline;
    j["fixed_clock"] = config.fixed_clock;
    j["api_base"] = config.api_base;
    j["report_base"] = config.report_base;
    j["contact"] = config.contact;
    j["workers"] = config.workers;
    j["out_dir"] = config.out_dir;
    j["corpus_id"] = config.corpus_id;
    return j.dump(2) + "\n";
}

} // namespace refaudit
