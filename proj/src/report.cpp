#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "errors.hpp"
#include "json_conv.hpp"
#include "textutil.hpp"
#include "version.hpp"

namespace refaudit {

namespace {

std::string percent_1dp(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", ratio * 100.0);
    return buf;
}

std::string status_label(AuditStatus status) {
    switch (status) {
        case AuditStatus::ok: return "OK";
        case AuditStatus::sneaked: return "Sneaked";
        case AuditStatus::missing: return "Missing";
    }
    return "?";
}

void render_table_md(std::ostringstream& out, const TableBlock& block) {
    const auto& table = block.table;
    const std::string source = source_kind_name(table.comparator);
    out << "## References registered at " << source << "\n\n";
    out << "| Status | Articles | Refs in HTML | Refs at " << source << " | Difference |\n";
    out << "|---|---:|---:|---:|---:|\n";
    for (AuditStatus status : {AuditStatus::ok, AuditStatus::sneaked, AuditStatus::missing}) {
        const auto& row = table.row(status);
        long long diff = status == AuditStatus::sneaked   ? table.delta_sneaked
                         : status == AuditStatus::missing ? table.delta_missing
                                                          : 0;
        out << "| " << status_label(status) << " | "
            << format_thousands(static_cast<long long>(row.article_count)) << " | "
            << format_thousands(static_cast<long long>(row.refs_in_html)) << " | "
            << format_thousands(static_cast<long long>(row.refs_in_source)) << " | "
            << format_thousands(diff) << " |\n";
    }
    out << "| Total | " << format_thousands(static_cast<long long>(table.totals.articles))
        << " | " << format_thousands(static_cast<long long>(table.totals.refs_in_html)) << " | "
        << format_thousands(static_cast<long long>(table.totals.refs_in_source)) << " |  |\n\n";

    if (block.rates) {
        out << "- Sneaked share of registered references: "
            << percent_1dp(block.rates->sneaked_share_of_registered) << " ("
            << format_thousands(table.delta_sneaked) << "/"
            << format_thousands(static_cast<long long>(table.totals.refs_in_source)) << ")\n";
        out << "- Citation augmentation over the version of record: "
            << percent_1dp(block.rates->sneaked_augmentation) << "\n";
        out << "- Lost share of version-of-record references: "
            << percent_1dp(block.rates->missing_share_of_original) << " ("
            << format_thousands(-table.delta_missing) << "/"
            << format_thousands(static_cast<long long>(table.totals.refs_in_html)) << ")\n";
    }
    out << "\n";
}

ojson rates_json(const CorpusRates& rates) {
    ojson j = ojson::object();
    j["sneaked_share_of_registered"] = rates.sneaked_share_of_registered;
    j["sneaked_augmentation"] = rates.sneaked_augmentation;
    j["missing_share_of_original"] = rates.missing_share_of_original;
    return j;
}

CorpusRates rates_from_json(const nlohmann::json& j) {
    CorpusRates rates;
    rates.sneaked_share_of_registered = j.at("sneaked_share_of_registered").get<double>();
    rates.sneaked_augmentation = j.at("sneaked_augmentation").get<double>();
    rates.missing_share_of_original = j.at("missing_share_of_original").get<double>();
    return rates;
}

ojson row_json(const StatusRow& row) {
    ojson j = ojson::object();
    j["articles"] = row.article_count;
    j["refs_in_html"] = row.refs_in_html;
    j["refs_in_source"] = row.refs_in_source;
    return j;
}

StatusRow row_from_json(const nlohmann::json& j) {
    StatusRow row;
    row.article_count = j.at("articles").get<std::size_t>();
    row.refs_in_html = j.at("refs_in_html").get<std::size_t>();
    row.refs_in_source = j.at("refs_in_source").get<std::size_t>();
    return row;
}

} // namespace

std::vector<FlaggedEntry> sorted_flagged(const AuditReport& report) {
    std::vector<FlaggedEntry> flagged = report.flagged;
    std::sort(flagged.begin(), flagged.end(), [](const FlaggedEntry& a, const FlaggedEntry& b) {
        const auto abs_a = a.delta < 0 ? -a.delta : a.delta;
        const auto abs_b = b.delta < 0 ? -b.delta : b.delta;
        if (abs_a != abs_b) return abs_a > abs_b;
        if (a.doi != b.doi) return a.doi < b.doi;
        return std::string_view(source_kind_name(a.comparator)) <
               std::string_view(source_kind_name(b.comparator));
    });
    return flagged;
}

std::string render_markdown(const AuditReport& report) {
    std::ostringstream out;
    out << "# Reference audit: " << report.corpus_id << "\n\n";
    out << "Generated: " << report.generated_at << "\n\n";

    for (const auto& block : report.tables) render_table_md(out, block);

    const auto flagged = sorted_flagged(report);
    if (!flagged.empty()) {
        out << "## Flagged publications\n\n";
        out << "| DOI | Source | Refs in HTML | Refs at source | Delta | Status | Duplication |\n";
        out << "|---|---|---:|---:|---:|---|---:|\n";
        for (const auto& entry : flagged) {
            out << "| " << entry.doi.value() << " | " << source_kind_name(entry.comparator)
                << " | " << format_thousands(static_cast<long long>(entry.s)) << " | "
                << format_thousands(static_cast<long long>(entry.r)) << " | "
                << format_thousands(entry.delta) << " | " << status_label(entry.status) << " | "
                << (entry.duplication_factor > 1
                        ? "x" + std::to_string(entry.duplication_factor)
                        : std::string("-"))
                << " |\n";
        }
        out << "\n";
        for (const auto& entry : flagged) {
            if (entry.sneaked_sample.empty()) continue;
            out << "### " << entry.doi.value() << " (" << source_kind_name(entry.comparator)
                << ")\n\n";
            out << "Sample of references present only in the registered metadata:\n\n";
            for (const auto& raw : entry.sneaked_sample) out << "- " << raw << "\n";
            out << "\n";
        }
    }

    if (!report.beneficiaries.empty()) {
        out << "## Beneficiaries of sneaked citations\n\n";
        auto entities = top_entities(report.beneficiaries, 10);
        if (!entities.empty()) {
            out << "| Entity | Kind | Extra citations |\n|---|---|---:|\n";
            for (const auto& [key, count] : entities) {
                out << "| " << key.name << " | "
                    << (key.kind == EntityKey::Kind::author ? "author" : "container") << " | "
                    << format_thousands(static_cast<long long>(count)) << " |\n";
            }
            out << "\n";
        }
        auto tokens = top_tokens(report.beneficiaries, 10);
        if (!tokens.empty()) {
            out << "Most frequent metadata tokens: ";
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                if (i) out << ", ";
                out << tokens[i].first << " (" << tokens[i].second << ")";
            }
            out << "\n\n";
        }
    }

    out << "## Reconciliation\n\n";
    out << "- Corpus DOIs unavailable in some source: "
        << format_thousands(static_cast<long long>(report.reconciliation.unavailable.size()))
        << "\n";
    out << "- Export rows without a corpus DOI: "
        << format_thousands(static_cast<long long>(report.reconciliation.unmatched_rows))
        << "\n";
    const std::size_t shown = std::min<std::size_t>(report.reconciliation.unavailable.size(), 50);
    for (std::size_t i = 0; i < shown; ++i)
        out << "  - " << report.reconciliation.unavailable[i].value() << "\n";
    if (shown < report.reconciliation.unavailable.size())
        out << "  - (" << (report.reconciliation.unavailable.size() - shown) << " more)\n";
    return out.str();
}

std::string render_json(const AuditReport& report) {
    ojson j = ojson::object();
    j["schema_version"] = kReportSchemaVersion;
    j["corpus_id"] = report.corpus_id;
    j["generated_at"] = report.generated_at;

    ojson tables = ojson::array();
    for (const auto& block : report.tables) {
        ojson t = ojson::object();
        t["comparator"] = source_kind_name(block.table.comparator);
        ojson rows = ojson::object();
        rows["ok"] = row_json(block.table.row(AuditStatus::ok));
        rows["sneaked"] = row_json(block.table.row(AuditStatus::sneaked));
        rows["missing"] = row_json(block.table.row(AuditStatus::missing));
        t["rows"] = std::move(rows);
        t["delta_sneaked"] = block.table.delta_sneaked;
        t["delta_missing"] = block.table.delta_missing;
        ojson totals = ojson::object();
        totals["articles"] = block.table.totals.articles;
        totals["refs_in_html"] = block.table.totals.refs_in_html;
        totals["refs_in_source"] = block.table.totals.refs_in_source;
        t["totals"] = std::move(totals);
        t["rates"] = block.rates ? rates_json(*block.rates) : ojson(nullptr);
        tables.push_back(std::move(t));
    }
    j["tables"] = std::move(tables);

    ojson flagged = ojson::array();
    for (const auto& entry : sorted_flagged(report)) {
        ojson f = ojson::object();
        f["doi"] = entry.doi.value();
        f["comparator"] = source_kind_name(entry.comparator);
        f["refs_in_html"] = entry.s;
        f["refs_in_source"] = entry.r;
        f["delta"] = entry.delta;
        f["status"] = audit_status_name(entry.status);
        f["duplication_factor"] = entry.duplication_factor;
        f["sneaked_sample"] = entry.sneaked_sample;
        flagged.push_back(std::move(f));
    }
    j["flagged"] = std::move(flagged);

    ojson beneficiaries = ojson::object();
    ojson entities = ojson::array();
    for (const auto& [key, count] :
         top_entities(report.beneficiaries, report.beneficiaries.entity_counts.size())) {
        ojson e = ojson::object();
        e["kind"] = key.kind == EntityKey::Kind::author ? "author" : "container";
        e["name"] = key.name;
        e["count"] = count;
        entities.push_back(std::move(e));
    }
    beneficiaries["entities"] = std::move(entities);
    ojson tokens = ojson::array();
    for (const auto& [token, count] :
         top_tokens(report.beneficiaries, report.beneficiaries.token_counts.size())) {
        ojson t = ojson::object();
        t["token"] = token;
        t["count"] = count;
        tokens.push_back(std::move(t));
    }
    beneficiaries["tokens"] = std::move(tokens);
    j["beneficiaries"] = std::move(beneficiaries);

    ojson reconciliation = ojson::object();
    ojson unavailable = ojson::array();
    for (const auto& doi : report.reconciliation.unavailable) unavailable.push_back(doi.value());
    reconciliation["unavailable"] = std::move(unavailable);
    reconciliation["unmatched_rows"] = report.reconciliation.unmatched_rows;
    j["reconciliation"] = std::move(reconciliation);

    return j.dump(2) + "\n";
}

AuditReport parse_report_json(const std::string& text) {
    auto j = parse_json(text, "audit report");
    if (!j.is_object() || j.value("schema_version", "") != std::string(kReportSchemaVersion))
        raise(errc::parse, "audit report: missing or unsupported schema_version");

    AuditReport report;
    report.corpus_id = j.value("corpus_id", "");
    report.generated_at = j.value("generated_at", "");

    for (const auto& t : j.at("tables")) {
        TableBlock block;
        auto comparator = source_kind_from_name(t.at("comparator").get<std::string>());
        if (!comparator) raise(errc::parse, "audit report: unknown comparator");
        block.table.comparator = *comparator;
        block.table.rows[AuditStatus::ok] = row_from_json(t.at("rows").at("ok"));
        block.table.rows[AuditStatus::sneaked] = row_from_json(t.at("rows").at("sneaked"));
        block.table.rows[AuditStatus::missing] = row_from_json(t.at("rows").at("missing"));
        block.table.delta_sneaked = t.at("delta_sneaked").get<long long>();
        block.table.delta_missing = t.at("delta_missing").get<long long>();
        block.table.totals.articles = t.at("totals").at("articles").get<std::size_t>();
        block.table.totals.refs_in_html = t.at("totals").at("refs_in_html").get<std::size_t>();
        block.table.totals.refs_in_source =
            t.at("totals").at("refs_in_source").get<std::size_t>();
        if (!t.at("rates").is_null()) block.rates = rates_from_json(t.at("rates"));
        report.tables.push_back(std::move(block));
    }

    for (const auto& f : j.at("flagged")) {
        FlaggedEntry entry{Doi::parse(f.at("doi").get<std::string>())};
        auto comparator = source_kind_from_name(f.at("comparator").get<std::string>());
        auto status = audit_status_from_name(f.at("status").get<std::string>());
        if (!comparator || !status) raise(errc::parse, "audit report: bad flagged entry");
        entry.comparator = *comparator;
        entry.s = f.at("refs_in_html").get<std::size_t>();
        entry.r = f.at("refs_in_source").get<std::size_t>();
        entry.delta = f.at("delta").get<long long>();
        entry.status = *status;
        entry.duplication_factor = f.at("duplication_factor").get<std::size_t>();
        for (const auto& s : f.at("sneaked_sample"))
            entry.sneaked_sample.push_back(s.get<std::string>());
        report.flagged.push_back(std::move(entry));
    }

    const auto& b = j.at("beneficiaries");
    for (const auto& e : b.at("entities")) {
        EntityKey key;
        key.kind = e.at("kind").get<std::string>() == "author" ? EntityKey::Kind::author
                                                               : EntityKey::Kind::container;
        key.name = e.at("name").get<std::string>();
        report.beneficiaries.entity_counts[key] = e.at("count").get<std::size_t>();
    }
    for (const auto& t : b.at("tokens"))
        report.beneficiaries.token_counts[t.at("token").get<std::string>()] =
            t.at("count").get<std::size_t>();

    const auto& rec = j.at("reconciliation");
    for (const auto& d : rec.at("unavailable"))
        report.reconciliation.unavailable.push_back(Doi::parse(d.get<std::string>()));
    report.reconciliation.unmatched_rows = rec.at("unmatched_rows").get<std::size_t>();

    return report;
}

std::string render_flagged_csv(const AuditReport& report) {
    std::ostringstream out;
    out << "doi,comparator,s,r,delta,status,duplication_factor\r\n";
    for (const auto& entry : sorted_flagged(report)) {
        out << entry.doi.value() << ',' << source_kind_name(entry.comparator) << ',' << entry.s
            << ',' << entry.r << ',' << entry.delta << ',' << audit_status_name(entry.status)
            << ',' << entry.duplication_factor << "\r\n";
    }
    return out.str();
}

} // namespace refaudit
