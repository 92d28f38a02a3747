#include "publisher.hpp"

#include <regex>

#include "errors.hpp"
#include "html.hpp"
#include "json_conv.hpp"
#include "textutil.hpp"

namespace refaudit {

namespace {

constexpr std::string_view kHeadingPrefix = "heading:";

// Leading list-numbering token: "[1]", "(12)", "3.", "4)" ...
const std::regex& numbering_re() {
    static const std::regex re(R"(^[\[\(]?\d+[\]\).]?\s*)");
    return re;
}

std::optional<html::Element> locate_container(const std::string& document,
                                              const ExtractionRule& rule) {
    if (rule.container_hint.starts_with(kHeadingPrefix)) {
        auto word = rule.container_hint.substr(kHeadingPrefix.size());
        auto heading = html::find_heading(document, word);
        if (!heading) return std::nullopt;
        return html::find_list_like(document, heading->after);
    }
    return html::find_element(document, rule.container_hint);
}

} // namespace

void validate_adapter(const AdapterSpec& spec) {
    auto placeholders = 0;
    for (std::string_view p : {"{doi}", "{suffix}"}) {
        std::size_t at = 0;
        while ((at = spec.url_template.find(p, at)) != std::string::npos) {
            ++placeholders;
            at += p.size();
        }
    }
    if (placeholders != 1)
        raise(errc::invalid_argument, "adapter '" + spec.journal_id +
                                          "': url_template needs exactly one {doi} or "
                                          "{suffix} placeholder");
    if (trim(spec.rule.container_hint).empty() || trim(spec.rule.item_hint).empty())
        raise(errc::invalid_argument,
              "adapter '" + spec.journal_id + "': extraction hints must be non-empty");
    if (spec.journal_id.empty())
        raise(errc::invalid_argument, "adapter journal_id must be non-empty ('*' for fallback)");
    for (const auto& pat : spec.rule.strip_patterns) {
        try {
            std::regex re(pat);
        } catch (const std::regex_error& e) {
            raise(errc::invalid_argument,
                  "adapter '" + spec.journal_id + "': bad strip pattern '" + pat + "': " + e.what());
        }
    }
}

AdapterConfig load_adapter_config(const std::string& json_text) {
    auto j = parse_json(json_text, "adapter config");
    if (!j.is_object() || !j.contains("adapters") || !j.at("adapters").is_array())
        raise(errc::parse, "adapter config needs an adapters array");
    AdapterConfig config;
    for (const auto& entry : j.at("adapters")) {
        if (!entry.is_object()) raise(errc::parse, "adapter entries must be objects");
        AdapterSpec spec;
        spec.journal_id = entry.value("journal_id", std::string());
        spec.url_template = entry.value("url_template", std::string());
        spec.rule.container_hint = entry.value("container_hint", std::string());
        spec.rule.item_hint = entry.value("item_hint", std::string());
        if (entry.contains("strip_patterns"))
            for (const auto& p : entry.at("strip_patterns"))
                spec.rule.strip_patterns.push_back(p.get<std::string>());
        spec.notes = entry.value("notes", std::string());
        validate_adapter(spec);
        config.adapters.push_back(std::move(spec));
    }
    return config;
}

const AdapterSpec* route_adapter(const AdapterConfig& config, const Doi& doi) {
    const AdapterSpec* best = nullptr;
    std::size_t best_len = 0;
    bool have_match = false;
    auto suffix = doi.suffix();
    for (const auto& spec : config.adapters) {
        if (spec.journal_id == "*") {
            if (!have_match) {
                best = &spec;
                // wildcard keeps length 0 so any named match wins
            }
            continue;
        }
        if (istarts_with(suffix, spec.journal_id) && spec.journal_id.size() >= best_len) {
            bool longer = spec.journal_id.size() > best_len;
            if (longer || !have_match) {
                best = &spec;
                best_len = spec.journal_id.size();
                have_match = true;
            }
        }
    }
    return best;
}

std::string page_url(const AdapterSpec& spec, const Doi& doi) {
    std::string url = spec.url_template;
    for (auto [placeholder, value] :
         {std::pair<std::string_view, std::string>{"{doi}", doi.value()},
          std::pair<std::string_view, std::string>{"{suffix}", std::string(doi.suffix())}}) {
        auto at = url.find(placeholder);
        if (at != std::string::npos) url.replace(at, placeholder.size(), value);
    }
    return url;
}

std::vector<ReferenceRecord> extract_references(const std::string& document,
                                                const AdapterSpec& spec) {
    auto container = locate_container(document, spec.rule);
    if (!container)
        raise(errc::extraction_failed, "container hint '" + spec.rule.container_hint +
                                           "' matched nothing; page layout changed?");

    std::vector<std::regex> strips;
    strips.reserve(spec.rule.strip_patterns.size());
    for (const auto& pat : spec.rule.strip_patterns) strips.emplace_back(pat);

    std::vector<ReferenceRecord> out;
    for (const auto& item :
         html::find_elements(document, spec.rule.item_hint, container->begin, container->end)) {
        std::string text = html::text_content(document, item.begin, item.end);
        for (const auto& re : strips) text = std::regex_replace(text, re, "");
        text = std::regex_replace(text, numbering_re(), "", std::regex_constants::format_first_only);
        text = trim(text);
        if (text.empty()) continue;
        out.push_back(ReferenceRecord::make(std::move(text)));
    }
    return out;
}

PdfAgreement verify_against_pdf_count(std::size_t html_count,
                                      std::optional<std::size_t> pdf_count) {
    if (!pdf_count) return PdfAgreement{true, false};
    return PdfAgreement{*pdf_count == html_count, true};
}

PublisherClient::PublisherClient(std::shared_ptr<Fetcher> fetcher,
                                 std::shared_ptr<FileStore> pages_store)
    : fetcher_(std::move(fetcher)), pages_store_(std::move(pages_store)) {}

std::string PublisherClient::fetch_page(const Doi& doi, const AdapterSpec& spec,
                                        CachePolicy policy) {
    auto fetched = fetcher_->fetch(page_url(spec, doi), doi.value(), *pages_store_, policy);
    if (fetched.status == 404)
        raise(errc::extraction_failed, "article page for " + doi.value() + " returned 404");
    if (fetched.status != 200)
        raise(errc::transport, "unexpected status " + std::to_string(fetched.status) +
                                   " fetching page for " + doi.value());
    return fetched.body;
}

} // namespace refaudit
