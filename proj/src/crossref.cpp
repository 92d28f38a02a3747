#include "crossref.hpp"

#include <cctype>
#include <regex>
#include <set>

#include "errors.hpp"
#include "json_conv.hpp"
#include "textutil.hpp"

namespace refaudit {

namespace {

// Percent-encodes a DOI for use inside a URL path; '/' is kept because the
// registry accepts DOI names verbatim after /works/.
std::string path_escape(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '-' || c == '.' || c == '_' || c == '~' || c == '/') {
            out.push_back(c);
        } else {
            out.push_back('%');
            out.push_back(hex[u >> 4]);
            out.push_back(hex[u & 0xF]);
        }
    }
    return out;
}

std::optional<long long> parse_integer(std::string_view s) {
    std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return std::nullopt;
    long long v = 0;
    for (; i < t.size(); ++i) {
        if (t[i] == ',') continue; // thousands separator in report pages
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return std::nullopt;
        v = v * 10 + (t[i] - '0');
    }
    return t[0] == '-' ? -v : v;
}

std::size_t count_field(const nlohmann::json& work, const char* key) {
    if (!work.contains(key)) return 0;
    const auto& v = work.at(key);
    if (v.is_number_integer()) {
        auto n = v.get<long long>();
        return n > 0 ? static_cast<std::size_t>(n) : 0;
    }
    if (v.is_string()) {
        auto n = parse_integer(v.get<std::string>());
        return (n && *n > 0) ? static_cast<std::size_t>(*n) : 0;
    }
    raise(errc::parse, std::string(key) + " must be a number");
}

std::optional<std::string> string_field(const nlohmann::json& entry, const char* key) {
    if (!entry.contains(key)) return std::nullopt;
    const auto& v = entry.at(key);
    if (!v.is_string()) return std::nullopt;
    std::string s = collapse_whitespace(v.get<std::string>());
    if (s.empty()) return std::nullopt;
    return s;
}

ReferenceRecord reference_from_entry(const nlohmann::json& entry) {
    if (!entry.is_object())
        raise(errc::parse, "reference entry is not an object");

    StructuredFields f;
    bool any = false;
    if (auto a = string_field(entry, "author")) {
        f.authors.push_back(*a);
        any = true;
    }
    if (entry.contains("year")) {
        std::optional<long long> y;
        if (entry.at("year").is_number_integer())
            y = entry.at("year").get<long long>();
        else if (entry.at("year").is_string())
            y = parse_integer(entry.at("year").get<std::string>());
        if (y && *y >= kYearMin && *y <= kYearMax) {
            f.year = static_cast<int>(*y);
            any = true;
        }
    }
    if (auto t = string_field(entry, "article-title")) {
        f.title = *t;
        any = true;
    }
    if (auto c = string_field(entry, "journal-title")) {
        f.container = *c;
        any = true;
    } else if (auto v = string_field(entry, "volume-title")) {
        f.container = *v;
        any = true;
    }
    if (auto d = string_field(entry, "DOI")) {
        if (auto doi = Doi::try_parse(*d)) {
            f.doi = *doi;
            any = true;
        }
    }

    std::string raw;
    if (auto u = string_field(entry, "unstructured")) raw = *u;
    if (raw.empty()) {
        // Registry entries may be purely structured; synthesize a readable
        // raw string so downstream comparison has text to work with.
        std::string s;
        for (const auto& a : f.authors) s += a + ". ";
        if (f.year) s += "(" + std::to_string(*f.year) + "). ";
        if (f.title) s += *f.title + ". ";
        if (f.container) s += *f.container + ". ";
        if (f.doi) s += "doi:" + f.doi->value();
        raw = trim(s);
    }
    if (raw.empty()) raw = entry.dump(); // entry with no usable fields; keep it countable

    return ReferenceRecord::make(std::move(raw), any ? std::optional(std::move(f)) : std::nullopt);
}

} // namespace

DepositorReport parse_depositor_report(const std::string& document) {
    DepositorReport report;

    std::smatch m;
    static const std::regex pubid_re(R"(pubid[=:]\s*([A-Za-z0-9_-]+))", std::regex::icase);
    if (std::regex_search(document, m, pubid_re)) report.publication_id = m[1];

    static const std::regex h1_re(R"(<h1[^>]*>([^<]*)</h1>)", std::regex::icase);
    static const std::regex journal_line_re(R"(journal[^:\r\n]*:[ \t]*([^\r\n<]+))",
                                            std::regex::icase);
    if (std::regex_search(document, m, h1_re))
        report.journal_title = collapse_whitespace(decode_html_entities(m[1].str()));
    else if (std::regex_search(document, m, journal_line_re))
        report.journal_title = collapse_whitespace(decode_html_entities(m[1].str()));

    std::set<std::string> seen;
    for (const Doi& doi : scan_dois(document))
        if (seen.insert(doi.value()).second) report.dois.push_back(doi);

    if (report.dois.empty())
        raise(errc::unrecognized_report_format,
              "no DOI lines found in depositor report" +
                  (report.publication_id.empty() ? std::string()
                                                 : " for " + report.publication_id));

    static const std::regex total_re(R"(total[^0-9\r\n]*([0-9][0-9,]*))", std::regex::icase);
    if (std::regex_search(document, m, total_re)) {
        auto stated = parse_integer(m[1].str());
        if (stated && static_cast<std::size_t>(*stated) != report.dois.size())
            raise(errc::parse, "depositor report states " + std::to_string(*stated) +
                                   " DOIs but lists " + std::to_string(report.dois.size()));
    }

    return report;
}

CrossrefWork parse_work(const Doi& doi, const std::string& body, std::string fetched_at) {
    auto root = parse_json(body, "works payload for " + doi.value());
    const nlohmann::json* work = &root;
    if (root.is_object() && root.contains("message")) {
        if (!root.at("message").is_object())
            raise(errc::parse, "works payload for " + doi.value() + ": message is not an object");
        work = &root.at("message");
    }
    if (!work->is_object())
        raise(errc::parse, "works payload for " + doi.value() + " is not an object");

    CrossrefWork out{doi, 0, {}, 0, std::move(fetched_at)};
    out.declared_reference_count = count_field(*work, "reference-count");
    out.is_referenced_by_count = count_field(*work, "is-referenced-by-count");
    if (work->contains("reference")) {
        const auto& refs = work->at("reference");
        if (!refs.is_array())
            raise(errc::parse, "works payload for " + doi.value() + ": reference is not an array");
        out.references.reserve(refs.size());
        for (const auto& entry : refs) out.references.push_back(reference_from_entry(entry));
    }
    return out;
}

CountConsistency check_count_consistency(const CrossrefWork& work) {
    CountConsistency c;
    c.declared = work.declared_reference_count;
    c.actual = work.references.size();
    c.consistent = (c.declared == c.actual);
    return c;
}

CrossrefClient::CrossrefClient(Endpoints endpoints, std::shared_ptr<Fetcher> fetcher,
                               std::shared_ptr<FileStore> works_store,
                               std::shared_ptr<FileStore> reports_store)
    : endpoints_(std::move(endpoints)), fetcher_(std::move(fetcher)),
      works_store_(std::move(works_store)), reports_store_(std::move(reports_store)) {}

std::string CrossrefClient::work_url(const Doi& doi) const {
    return endpoints_.api_base + "/works/" + path_escape(doi.value());
}

std::string CrossrefClient::report_url(const std::string& pubid) const {
    return endpoints_.report_base + "?pubid=" + path_escape(pubid);
}

CrossrefWork CrossrefClient::fetch_work(const Doi& doi, CachePolicy policy) {
    auto fetched = fetcher_->fetch(work_url(doi), doi.value(), *works_store_, policy);
    if (fetched.status == 404)
        raise(errc::not_registered, "registry has no record of " + doi.value());
    if (fetched.status != 200)
        raise(errc::transport, "unexpected status " + std::to_string(fetched.status) +
                                   " fetching work " + doi.value());
    return parse_work(doi, fetched.body, fetched.fetched_at);
}

DepositorReport CrossrefClient::fetch_depositor_report(const std::string& pubid,
                                                       CachePolicy policy) {
    auto fetched = fetcher_->fetch(report_url(pubid), pubid, *reports_store_, policy);
    if (fetched.status == 404)
        raise(errc::unrecognized_report_format, "no depositor report for pubid " + pubid);
    if (fetched.status != 200)
        raise(errc::transport, "unexpected status " + std::to_string(fetched.status) +
                                   " fetching depositor report " + pubid);
    try {
        auto report = parse_depositor_report(fetched.body);
        if (report.publication_id.empty()) report.publication_id = pubid;
        return report;
    } catch (const Error& e) {
        raise(e.code(), "pubid " + pubid + ": " + e.what());
    }
}

} // namespace refaudit
