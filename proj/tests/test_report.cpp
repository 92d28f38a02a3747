#include <doctest.h>

#include <random>

#include "errors.hpp"
#include "helpers.hpp"
#include "report.hpp"

using namespace refaudit;

namespace {

// A report with every feature exercised: two comparator tables, rates,
// flagged entries with samples, beneficiaries, reconciliation leftovers.
AuditReport sample_report() {
    AuditReport report;
    report.corpus_id = "pilot";
    report.generated_at = "2022-05-10T00:00:00Z";

    std::vector<DeltaResult> registry = {
        DeltaResult::make(Doi::parse("10.1234/aaa"), SourceKind::crossref, 7, 47),
        DeltaResult::make(Doi::parse("10.1234/bbb"), SourceKind::crossref, 12, 12),
        DeltaResult::make(Doi::parse("10.1234/ccc"), SourceKind::crossref, 23, 13),
    };
    TableBlock registry_block{aggregate(registry), std::nullopt};
    registry_block.rates = compute_rates(registry_block.table);
    report.tables.push_back(registry_block);

    std::vector<DeltaResult> index = {
        DeltaResult::make(Doi::parse("10.1234/aaa"), SourceKind::dimensions, 7, 13),
    };
    report.tables.push_back(TableBlock{aggregate(index), std::nullopt}); // no rates

    FlaggedEntry big{Doi::parse("10.1234/aaa")};
    big.comparator = SourceKind::crossref;
    big.s = 7;
    big.r = 47;
    big.delta = 40;
    big.status = AuditStatus::sneaked;
    big.duplication_factor = 4;
    big.sneaked_sample = {"Kataria B., GIS Science Journal, 2019.",
                          "Rao J., Control Systems, 2020."};
    FlaggedEntry small{Doi::parse("10.1234/ccc")};
    small.comparator = SourceKind::crossref;
    small.s = 23;
    small.r = 13;
    small.delta = -10;
    small.status = AuditStatus::missing;
    report.flagged = {big, small};

    report.beneficiaries.entity_counts[{EntityKey::Kind::author, "Bhavesh Kataria"}] = 33;
    report.beneficiaries.entity_counts[{EntityKey::Kind::container, "GIS Science Journal"}] = 33;
    report.beneficiaries.token_counts["solar"] = 12;
    report.beneficiaries.token_counts["kataria"] = 33;

    report.reconciliation.unavailable = {Doi::parse("10.1234/zzz")};
    report.reconciliation.unmatched_rows = 3;
    return report;
}

} // namespace

TEST_CASE("the json rendering inverts exactly") {
    const auto report = sample_report();
    const auto text = render_json(report);
    const auto back = parse_report_json(text);
    CHECK(back == report);
    // and the rendering itself is a fixed point
    CHECK(render_json(back) == text);
}

TEST_CASE("flagged entries come back in canonical order regardless of input order") {
    auto report = sample_report();
    std::swap(report.flagged[0], report.flagged[1]); // scrambled input
    const auto back = parse_report_json(render_json(report));
    REQUIRE(back.flagged.size() == 2);
    CHECK(back.flagged[0].delta == 40); // |40| > |-10|
    CHECK(back.flagged[1].delta == -10);
}

TEST_CASE("json round-trips survive randomized reports") {
    auto g = testing::rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        AuditReport report;
        report.corpus_id = "corpus-" + std::to_string(trial);
        report.generated_at = "2022-01-01T00:00:00Z";
        for (SourceKind comparator : {SourceKind::crossref, SourceKind::dimensions}) {
            std::vector<DeltaResult> results;
            const int n = testing::rand_int(g, 0, 12);
            for (int i = 0; i < n; ++i)
                results.push_back(
                    DeltaResult::make(Doi::parse("10.1234/p" + std::to_string(i)), comparator,
                                      static_cast<std::size_t>(testing::rand_int(g, 0, 40)),
                                      static_cast<std::size_t>(testing::rand_int(g, 0, 40))));
            TableBlock block{aggregate(results, comparator), std::nullopt};
            if (block.table.totals.refs_in_html > 0 && block.table.totals.refs_in_source > 0)
                block.rates = compute_rates(block.table);
            report.tables.push_back(std::move(block));

            for (const auto& result : results) {
                if (result.delta == 0) continue;
                FlaggedEntry entry{result.doi};
                entry.comparator = comparator;
                entry.s = result.s;
                entry.r = result.r;
                entry.delta = result.delta;
                entry.status = result.status;
                if (testing::rand_int(g, 0, 1))
                    entry.sneaked_sample.push_back("sample ref " + std::to_string(trial));
                report.flagged.push_back(std::move(entry));
            }
        }
        report.flagged = sorted_flagged(report); // canonical order makes equality exact
        if (testing::rand_int(g, 0, 1))
            report.beneficiaries.entity_counts[{EntityKey::Kind::author, "Some Name"}] =
                static_cast<std::size_t>(testing::rand_int(g, 1, 9));
        report.reconciliation.unmatched_rows =
            static_cast<std::size_t>(testing::rand_int(g, 0, 5));

        CHECK(parse_report_json(render_json(report)) == report);
    }
}

TEST_CASE("reports with the wrong schema version are refused") {
    auto report = sample_report();
    auto text = render_json(report);
    const std::string needle = "\"schema_version\": \"1\"";
    const auto at = text.find(needle);
    REQUIRE(at != std::string::npos);
    text.replace(at, needle.size(), "\"schema_version\": \"999\"");
    CHECK_THROWS_AS(parse_report_json(text), Error);

    CHECK_THROWS_AS(parse_report_json("{}"), Error);
    CHECK_THROWS_AS(parse_report_json("[]"), Error);
    CHECK_THROWS_AS(parse_report_json("not json at all"), Error);
}

TEST_CASE("the markdown report shows tables, rates, and samples") {
    const auto md = render_markdown(sample_report());
    CHECK(md.find("# Reference audit: pilot") != std::string::npos);
    CHECK(md.find("Generated: 2022-05-10T00:00:00Z") != std::string::npos);
    CHECK(md.find("## References registered at crossref") != std::string::npos);
    CHECK(md.find("## References registered at dimensions") != std::string::npos);
    CHECK(md.find("| Status | Articles | Refs in HTML | Refs at crossref | Difference |") !=
          std::string::npos);
    // OK row: 1 article, s=12, r=12, no difference
    CHECK(md.find("| OK | 1 | 12 | 12 | 0 |") != std::string::npos);
    CHECK(md.find("| Sneaked | 1 | 7 | 47 | 40 |") != std::string::npos);
    CHECK(md.find("| Missing | 1 | 23 | 13 | -10 |") != std::string::npos);
    CHECK(md.find("| Total | 3 | 42 | 72 |") != std::string::npos);
    // rates: 40/72 = 55.6%, 40/42 = 95.2%, 10/42 = 23.8%
    CHECK(md.find("Sneaked share of registered references: 55.6% (40/72)") != std::string::npos);
    CHECK(md.find("Citation augmentation over the version of record: 95.2%") !=
          std::string::npos);
    CHECK(md.find("Lost share of version-of-record references: 23.8% (10/42)") !=
          std::string::npos);
    // flagged table with duplication marker
    CHECK(md.find("## Flagged publications") != std::string::npos);
    CHECK(md.find("| 10.1234/aaa | crossref | 7 | 47 | 40 | Sneaked | x4 |") !=
          std::string::npos);
    CHECK(md.find("| 10.1234/ccc | crossref | 23 | 13 | -10 | Missing | - |") !=
          std::string::npos);
    // sample section only for entries that have one
    CHECK(md.find("### 10.1234/aaa (crossref)") != std::string::npos);
    CHECK(md.find("- Kataria B., GIS Science Journal, 2019.") != std::string::npos);
    CHECK(md.find("### 10.1234/ccc") == std::string::npos);
    // beneficiaries and reconciliation
    CHECK(md.find("## Beneficiaries of sneaked citations") != std::string::npos);
    CHECK(md.find("| Bhavesh Kataria | author | 33 |") != std::string::npos);
    CHECK(md.find("kataria (33)") != std::string::npos);
    CHECK(md.find("- Corpus DOIs unavailable in some source: 1") != std::string::npos);
    CHECK(md.find("  - 10.1234/zzz") != std::string::npos);
    CHECK(md.find("- Export rows without a corpus DOI: 3") != std::string::npos);
}

TEST_CASE("large counts render with thousands separators") {
    AuditReport report;
    report.corpus_id = "big";
    report.generated_at = "t";
    std::vector<DeltaResult> results = {
        DeltaResult::make(Doi::parse("10.1234/x"), SourceKind::crossref, 60635, 65836)};
    report.tables.push_back(TableBlock{aggregate(results), std::nullopt});
    const auto md = render_markdown(report);
    CHECK(md.find("| Sneaked | 1 | 60,635 | 65,836 | 5,201 |") != std::string::npos);
}

TEST_CASE("the markdown rendering is deterministic") {
    const auto report = sample_report();
    CHECK(render_markdown(report) == render_markdown(report));
}

TEST_CASE("the flagged csv is a fixed-layout crlf file in canonical order") {
    const auto csv = render_flagged_csv(sample_report());
    CHECK(csv ==
          "doi,comparator,s,r,delta,status,duplication_factor\r\n"
          "10.1234/aaa,crossref,7,47,40,sneaked,4\r\n"
          "10.1234/ccc,crossref,23,13,-10,missing,1\r\n");
}

TEST_CASE("canonical flagged order is |delta| desc, then doi, then comparator") {
    AuditReport report;
    auto entry = [](const char* doi, SourceKind comparator, long long delta) {
        FlaggedEntry e{Doi::parse(doi)};
        e.comparator = comparator;
        e.delta = delta;
        e.status = status_for_delta(delta);
        return e;
    };
    report.flagged = {
        entry("10.1234/bbb", SourceKind::crossref, 5),
        entry("10.1234/aaa", SourceKind::dimensions, -5),
        entry("10.1234/aaa", SourceKind::crossref, 5),
        entry("10.1234/aaa", SourceKind::crossref, -12),
    };
    const auto ordered = sorted_flagged(report);
    REQUIRE(ordered.size() == 4);
    CHECK(ordered[0].delta == -12);
    CHECK(ordered[1].doi.value() == "10.1234/aaa");
    CHECK(ordered[1].comparator == SourceKind::crossref);
    CHECK(ordered[2].doi.value() == "10.1234/aaa");
    CHECK(ordered[2].comparator == SourceKind::dimensions);
    CHECK(ordered[3].doi.value() == "10.1234/bbb");
}
