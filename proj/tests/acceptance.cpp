// Acceptance gate: one criterion per line, PASS/FAIL, non-zero exit when
// anything fails. Criteria 1-3 & 7 pin exact numbers for the bundled
// fixture corpus, 4 & 6 stress invariants against brute-force oracles,
// 5 replays published aggregate tables from their marginal breakdowns,
// 8 proves the offline audit is byte-reproducible through the CLI, and
// 9 checks the harvest rate limiter's sliding-window guarantee.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "audit.hpp"
#include "clock.hpp"
#include "crossref.hpp"
#include "dimensions.hpp"
#include "doi.hpp"
#include "errors.hpp"
#include "file_store.hpp"
#include "model.hpp"
#include "publisher.hpp"
#include "rate_limiter.hpp"
#include "refmatch.hpp"

namespace fs = std::filesystem;
using namespace refaudit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

fs::path fixtures() { return fs::path(FIXTURES_DIR); }

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

// One fixture article, assembled the same way the audit pipeline does it:
// page extraction + registry record + export cell split.
struct FixtureArticle {
    Doi doi;
    std::vector<ReferenceRecord> html;
    std::vector<ReferenceRecord> registry;
    std::vector<ReferenceRecord> exported;
    PublicationRecord pub;
};

FixtureArticle load_article(const std::string& suffix) {
    FixtureArticle article{Doi::parse("10.32628/" + suffix), {}, {}, {}, PublicationRecord{Doi::parse("10.32628/" + suffix), {}}};

    const auto adapters = load_adapter_config(slurp(fixtures() / "adapters.json"));
    const AdapterSpec* spec = route_adapter(adapters, article.doi);
    if (!spec) throw std::runtime_error("no adapter for " + article.doi.value());
    article.html = extract_references(slurp(fixtures() / "pages" / (suffix + ".html")), *spec);

    const auto work =
        parse_work(article.doi, slurp(fixtures() / "crossref" / (suffix + ".json")), "t0");
    article.registry = work.references;

    std::ifstream csv(fixtures() / "dimensions_export.csv", std::ios::binary);
    for (const ExportRow& row : parse_export(csv)) {
        if (row.doi && *row.doi == article.doi) {
            article.exported = split_reference_cell(row.cited_references_raw).references;
            break;
        }
    }

    article.pub.lists[SourceKind::publisher] = article.html;
    article.pub.lists[SourceKind::crossref] = article.registry;
    article.pub.lists[SourceKind::dimensions] = article.exported;
    return article;
}

// --- criterion 1: running-example article, all three sources -------------

Outcome criterion_1() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();

    const auto article = load_article("ijsrst229212");
    out.check(article.html.size() == 7,
              "page shows " + std::to_string(article.html.size()) + " refs, want 7");
    out.check(article.registry.size() == 47,
              "registry lists " + std::to_string(article.registry.size()) + " refs, want 47");
    out.check(article.exported.size() == 13,
              "export lists " + std::to_string(article.exported.size()) + " refs, want 13");

    const auto vs_registry = compute_delta(article.pub, SourceKind::crossref);
    out.check(vs_registry.delta == 40, "registry delta " + std::to_string(vs_registry.delta) +
                                           ", want +40");
    out.check(vs_registry.status == AuditStatus::sneaked, "registry status should be sneaked");

    const auto vs_export = compute_delta(article.pub, SourceKind::dimensions);
    out.check(vs_export.delta == 6,
              "export delta " + std::to_string(vs_export.delta) + ", want +6");

    const auto aligned = align(canonicalize_list(article.exported),
                               canonicalize_list(article.html));
    out.check(aligned.matched.empty(), "export/page alignment matched " +
                                           std::to_string(aligned.matched.size()) +
                                           " pairs, want 0");
    const auto sneaked = extract_sneaked_references(article.pub, SourceKind::dimensions);
    out.check(sneaked.size() == 13, "content-level sneaked set has " +
                                        std::to_string(sneaked.size()) + " refs, want 13");

    const double elapsed = seconds_since(start);
    out.check(elapsed < 1.0, "took " + fmt("%.3f", elapsed) + "s, budget 1s");
    out.detail = "page 7 / registry 47 / export 13; deltas +40 and +6; alignment 0 matched, "
                 "13 content-level sneaked; " +
                 fmt("%.3f", elapsed) + "s";
    return out;
}

// --- criterion 2: duplication detection on inflated registry lists -------

Outcome criterion_2() {
    Outcome out;

    const auto doubled = load_article("ijsrset21852");
    out.check(doubled.registry.size() == 300,
              "registry lists " + std::to_string(doubled.registry.size()) + " refs, want 300");
    const auto doubled_dup = detect_duplication(canonicalize_list(doubled.registry));
    out.check(doubled_dup.factor == 2,
              "duplication factor " + std::to_string(doubled_dup.factor) + ", want 2");
    out.check(doubled_dup.block_length == 150,
              "block length " + std::to_string(doubled_dup.block_length) + ", want 150");

    const auto quadrupled = load_article("ijsrst229394");
    out.check(quadrupled.registry.size() == 108, "registry lists " +
                                                     std::to_string(quadrupled.registry.size()) +
                                                     " refs, want 108");
    const auto quadrupled_dup = detect_duplication(canonicalize_list(quadrupled.registry));
    out.check(quadrupled_dup.factor == 4,
              "duplication factor " + std::to_string(quadrupled_dup.factor) + ", want 4");
    out.check(quadrupled_dup.block_length == 27,
              "block length " + std::to_string(quadrupled_dup.block_length) + ", want 27");

    out.detail = "300 refs -> factor 2 x block 150; 108 refs -> factor 4 x block 27";
    return out;
}

// --- criterion 3: second worked example, both comparators ----------------

Outcome criterion_3() {
    Outcome out;

    const auto article = load_article("ijsrst229154");
    out.check(article.html.size() == 23,
              "page shows " + std::to_string(article.html.size()) + " refs, want 23");
    out.check(article.registry.size() == 63,
              "registry lists " + std::to_string(article.registry.size()) + " refs, want 63");
    out.check(article.exported.size() == 33,
              "export lists " + std::to_string(article.exported.size()) + " refs, want 33");

    const auto vs_registry = compute_delta(article.pub, SourceKind::crossref);
    const auto vs_export = compute_delta(article.pub, SourceKind::dimensions);
    out.check(vs_registry.delta == 40,
              "registry delta " + std::to_string(vs_registry.delta) + ", want +40");
    out.check(vs_export.delta == 10,
              "export delta " + std::to_string(vs_export.delta) + ", want +10");
    out.check(vs_registry.status == AuditStatus::sneaked &&
                  vs_export.status == AuditStatus::sneaked,
              "both comparators should classify the article as sneaked");

    out.detail = "page 23 / registry 63 / export 33; deltas +40 and +10, both sneaked";
    return out;
}

// --- criterion 4: aggregation invariants on random corpora ---------------

Outcome criterion_4() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();

    std::mt19937 gen(20220822u);
    auto uniform = [&gen](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    };

    std::size_t corpora_checked = 0;
    for (int corpus = 0; corpus < 1000 && out.pass; ++corpus) {
        const int article_count = uniform(0, 200);
        std::vector<DeltaResult> results;
        results.reserve(static_cast<std::size_t>(article_count));
        for (int i = 0; i < article_count; ++i) {
            const auto s = static_cast<std::size_t>(uniform(0, 60));
            const auto r = static_cast<std::size_t>(uniform(0, 60));
            results.push_back(DeltaResult::make(
                Doi::parse("10.9999/rand" + std::to_string(corpus) + "x" + std::to_string(i)),
                SourceKind::crossref, s, r));
        }

        const auto table = aggregate(results, SourceKind::crossref);

        // Brute-force per-item oracle.
        std::map<AuditStatus, StatusRow> expect_rows;
        long long expect_sneaked = 0;
        long long expect_missing = 0;
        std::size_t expect_s = 0;
        std::size_t expect_r = 0;
        for (const auto& item : results) {
            const long long delta =
                static_cast<long long>(item.r) - static_cast<long long>(item.s);
            const AuditStatus status = delta > 0   ? AuditStatus::sneaked
                                       : delta < 0 ? AuditStatus::missing
                                                   : AuditStatus::ok;
            auto& row = expect_rows[status];
            row.article_count += 1;
            row.refs_in_html += item.s;
            row.refs_in_source += item.r;
            if (delta > 0) expect_sneaked += delta;
            if (delta < 0) expect_missing += delta;
            expect_s += item.s;
            expect_r += item.r;
        }

        const std::string tag = "corpus " + std::to_string(corpus) + ": ";
        for (AuditStatus status :
             {AuditStatus::ok, AuditStatus::sneaked, AuditStatus::missing}) {
            const auto& got = table.row(status);
            const auto& want = expect_rows[status];
            out.check(got == want, tag + "row mismatch vs per-item oracle");
        }
        out.check(table.delta_sneaked == expect_sneaked, tag + "sneaked sum mismatch");
        out.check(table.delta_missing == expect_missing, tag + "missing sum mismatch");
        out.check(table.totals.articles == static_cast<std::size_t>(article_count),
                  tag + "article total mismatch");
        out.check(table.totals.refs_in_html == expect_s, tag + "page-ref total mismatch");
        out.check(table.totals.refs_in_source == expect_r, tag + "source-ref total mismatch");

        // Balance: page total + inflation + loss == registered total.
        out.check(static_cast<long long>(table.totals.refs_in_html) + table.delta_sneaked +
                          table.delta_missing ==
                      static_cast<long long>(table.totals.refs_in_source),
                  tag + "balance identity violated");

        // Partition: every article lands in exactly one bucket.
        std::size_t bucketed = 0;
        for (const auto& [status, row] : table.rows) bucketed += row.article_count;
        out.check(bucketed == static_cast<std::size_t>(article_count),
                  tag + "status buckets do not partition the corpus");
        ++corpora_checked;
    }

    const double elapsed = seconds_since(start);
    out.check(elapsed < 10.0, "took " + fmt("%.2f", elapsed) + "s, budget 10s");
    out.detail = std::to_string(corpora_checked) +
                 " random corpora match the per-item oracle; balance and partition hold; " +
                 fmt("%.2f", elapsed) + "s";
    return out;
}

// --- criterion 5: replay of the published corpus tables ------------------

// The corpus tables are reconstructed from their per-status marginals
// (article counts, page-ref sums, discrepancy sums). Any per-article
// pairing of the marginals gives the same aggregate, so articles are
// paired in order.
void emit_bucket(std::vector<DeltaResult>& results, std::size_t& serial,
                 const std::vector<std::pair<std::size_t, std::size_t>>& s_slices,
                 const std::vector<std::pair<std::size_t, long long>>& delta_slices) {
    std::vector<std::size_t> s_values;
    for (const auto& [count, s] : s_slices)
        s_values.insert(s_values.end(), count, s);
    std::vector<long long> delta_values;
    for (const auto& [count, delta] : delta_slices)
        delta_values.insert(delta_values.end(), count, delta);
    if (s_values.size() != delta_values.size())
        throw std::runtime_error("marginal slices disagree on the article count");
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        const long long r = static_cast<long long>(s_values[i]) + delta_values[i];
        results.push_back(DeltaResult::make(Doi::parse("10.9999/replay" +
                                                       std::to_string(serial++)),
                                            SourceKind::crossref, s_values[i],
                                            static_cast<std::size_t>(r)));
    }
}

struct RateCheck {
    const char* label;
    double actual;   // exact ratio from the table
    double target;   // one-decimal percentage to reproduce
};

Outcome criterion_5() {
    Outcome out;
    std::size_t serial = 0;

    // Registry-comparator table.
    std::vector<DeltaResult> registry_results;
    emit_bucket(registry_results, serial, {{801, 18}, {2402, 17}},
                {{801, 0}, {2402, 0}});
    emit_bucket(registry_results, serial, {{56, 20}, {174, 19}}, {{228, 26}, {2, 25}});
    emit_bucket(registry_results, serial, {{8, 14}, {65, 13}}, {{47, -11}, {26, -10}});
    const auto registry_table = aggregate(registry_results, SourceKind::crossref);

    out.check(registry_table.row(AuditStatus::ok).article_count == 3203,
              "registry table: ok articles != 3203");
    out.check(registry_table.row(AuditStatus::sneaked).article_count == 230,
              "registry table: sneaked articles != 230");
    out.check(registry_table.row(AuditStatus::missing).article_count == 73,
              "registry table: missing articles != 73");
    out.check(registry_table.delta_sneaked == 5978,
              "registry table: sneaked sum " + std::to_string(registry_table.delta_sneaked) +
                  ", want 5978");
    out.check(registry_table.delta_missing == -777,
              "registry table: missing sum " + std::to_string(registry_table.delta_missing) +
                  ", want -777");
    out.check(registry_table.totals.refs_in_html == 60635,
              "registry table: page-ref total " +
                  std::to_string(registry_table.totals.refs_in_html) + ", want 60635");
    out.check(registry_table.totals.refs_in_source == 65836,
              "registry table: registered total " +
                  std::to_string(registry_table.totals.refs_in_source) + ", want 65836");
    out.check(static_cast<long long>(registry_table.totals.refs_in_html) +
                      registry_table.delta_sneaked + registry_table.delta_missing ==
                  static_cast<long long>(registry_table.totals.refs_in_source),
              "registry table: balance identity violated");

    const auto registry_rates = compute_rates(registry_table);
    out.check(registry_rates.sneaked_share_of_registered == 5978.0 / 65836.0,
              "registry table: sneaked share is not exactly 5978/65836");
    out.check(registry_rates.sneaked_augmentation == 5978.0 / 60635.0,
              "registry table: augmentation is not exactly 5978/60635");
    out.check(registry_rates.missing_share_of_original == 777.0 / 60635.0,
              "registry table: lost share is not exactly 777/60635");

    // Export-comparator table.
    std::vector<DeltaResult> export_results;
    emit_bucket(export_results, serial, {{192, 12}, {10, 11}}, {{192, 0}, {10, 0}});
    emit_bucket(export_results, serial, {{96, 14}, {24, 13}}, {{56, 9}, {64, 8}});
    emit_bucket(export_results, serial, {{2437, 18}, {747, 17}}, {{2424, -8}, {760, -7}});
    const auto export_table = aggregate(export_results, SourceKind::crossref);

    out.check(export_table.row(AuditStatus::ok).article_count == 202,
              "export table: ok articles != 202");
    out.check(export_table.row(AuditStatus::sneaked).article_count == 120,
              "export table: sneaked articles != 120");
    out.check(export_table.row(AuditStatus::missing).article_count == 3184,
              "export table: missing articles != 3184");
    out.check(export_table.delta_sneaked == 1016,
              "export table: sneaked sum " + std::to_string(export_table.delta_sneaked) +
                  ", want 1016");
    out.check(export_table.delta_missing == -24712,
              "export table: missing sum " + std::to_string(export_table.delta_missing) +
                  ", want -24712");
    out.check(export_table.totals.refs_in_html == 60635,
              "export table: page-ref total " +
                  std::to_string(export_table.totals.refs_in_html) + ", want 60635");
    out.check(static_cast<long long>(export_table.totals.refs_in_html) +
                      export_table.delta_sneaked + export_table.delta_missing ==
                  static_cast<long long>(export_table.totals.refs_in_source),
              "export table: balance identity violated");

    const auto export_rates = compute_rates(export_table);
    out.check(export_rates.missing_share_of_original == 24712.0 / 60635.0,
              "export table: lost share is not exactly 24712/60635");

    // One-decimal rate targets, tolerance half a unit in the second
    // decimal (0.05 percentage points).
    const RateCheck rate_checks[] = {
        {"sneaked share of registered refs", registry_rates.sneaked_share_of_registered, 9.1},
        {"citation augmentation", registry_rates.sneaked_augmentation, 9.8},
        {"lost share of page refs", registry_rates.missing_share_of_original, 1.2},
        {"export-comparator lost share", export_rates.missing_share_of_original, 40.7},
    };
    std::size_t rates_hit = 0;
    for (const auto& rc : rate_checks) {
        const double actual_pct = rc.actual * 100.0;
        const double gap = std::fabs(actual_pct - rc.target);
        const bool hit = gap <= 0.05;
        if (hit) ++rates_hit;
        out.notes.push_back(std::string(rc.label) + ": exact ratio " +
                            fmt("%.4f", actual_pct) + "%, one-decimal target " +
                            fmt("%.1f", rc.target) + "%, gap " + fmt("%.4f", gap) +
                            "pp -> " + (hit ? "within" : "OUTSIDE") + " 0.05pp");
        out.check(hit, ""); // note already recorded above
    }
    out.notes.erase(std::remove(out.notes.begin(), out.notes.end(), std::string()),
                    out.notes.end());
    if (rates_hit < 4)
        out.notes.push_back(
            "the exact ratios above follow mechanically from the pinned sums (5978/65836, "
            "5978/60635, 777/60635, 24712/60635); three of them round to the one-decimal "
            "targets only at a 0.1pp tolerance, so no implementation can land inside "
            "0.05pp of those targets while reproducing the pinned sums");

    out.detail = "both tables reproduce every pinned marginal and the exact ratios; " +
                 std::to_string(rates_hit) + "/4 one-decimal rate targets within 0.05pp";
    return out;
}

// --- criterion 6: greedy alignment vs optimal matching -------------------

std::size_t optimal_match_count(std::span<const CanonicalReference> a,
                                std::span<const CanonicalReference> b, double threshold) {
    std::vector<std::vector<std::size_t>> adjacent(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (similarity(a[i], b[j]) >= threshold) adjacent[i].push_back(j);

    std::vector<int> match_b(b.size(), -1);
    std::vector<char> used;
    std::function<bool(std::size_t)> try_assign = [&](std::size_t i) {
        for (std::size_t j : adjacent[i]) {
            if (used[j]) continue;
            used[j] = 1;
            if (match_b[j] < 0 || try_assign(static_cast<std::size_t>(match_b[j]))) {
                match_b[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        used.assign(b.size(), 0);
        if (try_assign(i)) ++count;
    }
    return count;
}

Outcome criterion_6() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();

    const std::vector<std::string> vocab = {
        "solar",  "energy", "grid",  "study",  "model", "wind",  "power", "load",
        "flow",   "data",   "risk",  "rate",   "cost",  "plan",  "site",  "test",
        "farm",   "node",   "cell",  "heat",   "mass",  "flux",  "core",  "beam",
        "storage", "design"};
    std::mt19937 gen(7771u);
    auto uniform = [&gen](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    };
    auto random_ref = [&]() {
        const int len = uniform(3, 7);
        std::string raw;
        for (int t = 0; t < len; ++t) {
            if (t) raw += ' ';
            raw += vocab[static_cast<std::size_t>(uniform(0, int(vocab.size()) - 1))];
        }
        if (uniform(0, 1)) raw += " " + std::to_string(uniform(1990, 2030));
        return ReferenceRecord::make(raw);
    };
    auto mutate = [&](const ReferenceRecord& ref) {
        std::istringstream in(ref.raw);
        std::vector<std::string> tokens;
        for (std::string token; in >> token;) tokens.push_back(token);
        const int edits = uniform(0, 2);
        for (int e = 0; e < edits && !tokens.empty(); ++e)
            tokens[static_cast<std::size_t>(uniform(0, int(tokens.size()) - 1))] =
                vocab[static_cast<std::size_t>(uniform(0, int(vocab.size()) - 1))];
        std::string raw;
        for (std::size_t t = 0; t < tokens.size(); ++t) {
            if (t) raw += ' ';
            raw += tokens[t];
        }
        return ReferenceRecord::make(raw.empty() ? "empty entry" : raw);
    };

    const int instances = 200;
    int equal = 0;
    for (int instance = 0; instance < instances; ++instance) {
        const int size_a = uniform(0, 10);
        const int size_b = uniform(0, 10);
        std::vector<ReferenceRecord> list_a;
        for (int i = 0; i < size_a; ++i) list_a.push_back(random_ref());
        std::vector<ReferenceRecord> list_b;
        for (int i = 0; i < size_b; ++i) {
            if (size_a > 0 && uniform(0, 1))
                list_b.push_back(
                    mutate(list_a[static_cast<std::size_t>(uniform(0, size_a - 1))]));
            else
                list_b.push_back(random_ref());
        }

        const auto a = canonicalize_list(list_a);
        const auto b = canonicalize_list(list_b);
        const auto greedy = align(a, b);
        const auto best = optimal_match_count(a, b, kDefaultSimilarityThreshold);
        const std::string tag = "instance " + std::to_string(instance) + ": ";

        out.check(greedy.matched.size() <= best,
                  tag + "greedy matched " + std::to_string(greedy.matched.size()) +
                      " pairs, optimal is " + std::to_string(best));
        if (greedy.matched.size() == best) ++equal;

        const auto flipped = align(b, a);
        out.check(flipped.matched.size() == greedy.matched.size(),
                  tag + "cardinality changes when the lists are swapped");
    }

    const double equal_share = 100.0 * equal / instances;
    out.check(equal >= instances * 95 / 100,
              "greedy equals the optimum in only " + fmt("%.1f", equal_share) +
                  "% of instances, want >= 95%");
    const double elapsed = seconds_since(start);
    out.check(elapsed < 30.0, "took " + fmt("%.2f", elapsed) + "s, budget 30s");
    out.detail = "greedy never beats the optimum, equals it in " + fmt("%.1f", equal_share) +
                 "% of 200 instances, swap-invariant cardinality throughout; " +
                 fmt("%.2f", elapsed) + "s";
    return out;
}

// --- criterion 7: duplication sweep ---------------------------------------

Outcome criterion_7() {
    Outcome out;
    std::size_t exact = 0;
    for (std::size_t block = 1; block <= 20; ++block) {
        for (std::size_t factor = 1; factor <= 6; ++factor) {
            std::vector<ReferenceRecord> refs;
            for (std::size_t repeat = 0; repeat < factor; ++repeat)
                for (std::size_t i = 0; i < block; ++i)
                    refs.push_back(ReferenceRecord::make(
                        "entry number" + std::to_string(i) + " on repeated citation blocks"));
            const auto result = detect_duplication(canonicalize_list(refs));
            const std::string tag =
                "block " + std::to_string(block) + " x factor " + std::to_string(factor) + ": ";
            out.check(result.factor == factor,
                      tag + "factor " + std::to_string(result.factor));
            out.check(result.block_length == block,
                      tag + "block length " + std::to_string(result.block_length));
            if (result.factor == factor && result.block_length == block) ++exact;
        }
    }
    out.detail = std::to_string(exact) + "/120 block-length x factor combinations exact";
    return out;
}

// --- criterion 8: byte-reproducible offline audit through the CLI ---------

std::string shell_quote(const std::string& text) { return "'" + text + "'"; }

int run_cli(const std::string& args, const fs::path& log) {
    const std::string command = std::string(CLI_PATH) + " " + args + " > " +
                                shell_quote(log.string()) + " 2>&1";
    const int status = std::system(command.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

Outcome criterion_8() {
    Outcome out;

    const fs::path root = fs::temp_directory_path() /
                          ("refaudit-acceptance-" + std::to_string(::getpid()));
    std::error_code ignored;
    fs::remove_all(root, ignored);
    fs::create_directories(root);
    const fs::path cache = root / "cache";

    // Seed the snapshot cache the same way a harvest run would, then keep
    // the network out of it entirely (--offline).
    const std::vector<std::string> suffixes = {"ijsrst229212", "ijsrst229394", "ijsrst229154",
                                               "ijsrset21852", "ijsrst229201",
                                               "ijsrcseit21900"};
    {
        FileStore works(cache / "crossref", ".json");
        FileStore pages(cache / "pages", ".html");
        for (const auto& suffix : suffixes) {
            const auto doi = Doi::parse("10.32628/" + suffix);
            works.write(doi, slurp(fixtures() / "crossref" / (suffix + ".json")),
                        "2022-05-09T00:00:00Z");
            pages.write(doi, slurp(fixtures() / "pages" / (suffix + ".html")),
                        "2022-05-09T00:00:00Z");
        }
    }

    const std::string base =
        "--cache-dir " + shell_quote(cache.string()) + " --doi-file " +
        shell_quote((fixtures() / "corpus_dois.txt").string()) + " --adapters " +
        shell_quote((fixtures() / "adapters.json").string()) + " --dimensions-export " +
        shell_quote((fixtures() / "dimensions_export.csv").string()) +
        " --corpus-id acceptance-fixture --fixed-clock 2022-05-10T00:00:00Z --offline ";

    const int inventory_rc = run_cli(base + "inventory", root / "inventory.log");
    out.check(inventory_rc == 0,
              "inventory exited with " + std::to_string(inventory_rc) + ", want 0");
    const int ingest_rc = run_cli(base + "ingest-dimensions", root / "ingest.log");
    out.check(ingest_rc == 0, "ingest exited with " + std::to_string(ingest_rc) + ", want 0");

    const int first_rc =
        run_cli(base + "--out " + shell_quote((root / "run1").string()) + " audit",
                root / "audit1.log");
    const int second_rc =
        run_cli(base + "--out " + shell_quote((root / "run2").string()) + " audit",
                root / "audit2.log");
    out.check(first_rc == 2,
              "first audit exited with " + std::to_string(first_rc) +
                  ", want 2 (sneaked references found)");
    out.check(second_rc == 2,
              "second audit exited with " + std::to_string(second_rc) + ", want 2");

    if (out.pass) {
        const auto same = [&](const char* name) {
            return slurp(root / "run1" / name) == slurp(root / "run2" / name);
        };
        out.check(same("report.json"), "report.json differs between the two runs");
        out.check(same("flagged.csv"), "flagged.csv differs between the two runs");
        if (!same("report.md")) out.notes.push_back("note: report.md differs (not required)");
    }

    if (out.pass)
        fs::remove_all(root, ignored);
    else
        out.notes.push_back("work dir kept for inspection: " + root.string());

    out.detail = "two offline CLI audits, pinned clock: report.json and flagged.csv "
                 "byte-identical, both exited 2";
    return out;
}

// --- criterion 9: rate limiter sliding-window guarantee -------------------

Outcome criterion_9() {
    Outcome out;

    auto clock = std::make_shared<MockClock>(0.0);
    RateLimiter limiter(1.0, clock);

    std::vector<double> admissions;
    admissions.reserve(100);
    for (int i = 0; i < 100; ++i) admissions.push_back(limiter.acquire());

    out.check(std::is_sorted(admissions.begin(), admissions.end()),
              "admission times are not monotone");
    std::size_t worst_window = 1;
    for (std::size_t i = 0; i < admissions.size(); ++i) {
        std::size_t in_window = 0;
        for (std::size_t j = i; j < admissions.size(); ++j)
            if (admissions[j] - admissions[i] < 1.0 - 1e-9) ++in_window;
            else break;
        worst_window = std::max(worst_window, in_window);
    }
    out.check(worst_window <= 1, "a sliding 1s window holds " + std::to_string(worst_window) +
                                     " admissions, want at most 1");
    out.detail = "100 admissions at 1 request/s on a mock clock; densest sliding 1s window "
                 "holds " +
                 std::to_string(worst_window);
    return out;
}

} // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3},
        {4, criterion_4}, {5, criterion_5}, {6, criterion_6},
        {7, criterion_7}, {8, criterion_8}, {9, criterion_9},
    };

    int failed = 0;
    for (const auto& [id, fn] : criteria) {
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("threw: ") + e.what();
        }
        if (!outcome.pass) ++failed;
        std::printf("criterion %d: %s — %s\n", id, outcome.pass ? "PASS" : "FAIL",
                    outcome.detail.c_str());
        for (const auto& note : outcome.notes)
            std::printf("  - %s\n", note.c_str());
    }

    std::printf("acceptance: %d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
