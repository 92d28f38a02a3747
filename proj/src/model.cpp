#include "model.hpp"

#include "errors.hpp"
#include "textutil.hpp"

namespace refaudit {

const char* source_kind_name(SourceKind kind) {
    switch (kind) {
    case SourceKind::publisher: return "publisher";
    case SourceKind::crossref: return "crossref";
    case SourceKind::dimensions: return "dimensions";
    }
    return "unknown";
}

std::optional<SourceKind> source_kind_from_name(std::string_view name) {
    if (iequals(name, "publisher")) return SourceKind::publisher;
    if (iequals(name, "crossref")) return SourceKind::crossref;
    if (iequals(name, "dimensions")) return SourceKind::dimensions;
    return std::nullopt;
}

bool is_comparator(SourceKind kind) {
    return kind == SourceKind::crossref || kind == SourceKind::dimensions;
}

const char* audit_status_name(AuditStatus status) {
    switch (status) {
    case AuditStatus::ok: return "ok";
    case AuditStatus::sneaked: return "sneaked";
    case AuditStatus::missing: return "missing";
    }
    return "unknown";
}

std::optional<AuditStatus> audit_status_from_name(std::string_view name) {
    if (iequals(name, "ok")) return AuditStatus::ok;
    if (iequals(name, "sneaked")) return AuditStatus::sneaked;
    if (iequals(name, "missing")) return AuditStatus::missing;
    return std::nullopt;
}

ReferenceRecord ReferenceRecord::make(std::string raw,
                                      std::optional<StructuredFields> structured) {
    if (trim(raw).empty())
        raise(errc::invalid_argument, "reference raw string is empty");
    if (structured && structured->year &&
        (*structured->year < kYearMin || *structured->year > kYearMax)) {
        raise(errc::invalid_argument,
              "reference year " + std::to_string(*structured->year) + " out of range");
    }
    return ReferenceRecord{std::move(raw), std::move(structured)};
}

std::optional<std::size_t> PublicationRecord::count(SourceKind kind) const {
    auto it = lists.find(kind);
    if (it == lists.end()) return std::nullopt;
    return it->second.size();
}

AuditStatus status_for_delta(long long delta) {
    if (delta > 0) return AuditStatus::sneaked;
    if (delta < 0) return AuditStatus::missing;
    return AuditStatus::ok;
}

DeltaResult DeltaResult::make(Doi doi, SourceKind comparator, std::size_t s, std::size_t r) {
    if (!is_comparator(comparator))
        raise(errc::invalid_argument, "comparator must be crossref or dimensions");
    const long long delta = static_cast<long long>(r) - static_cast<long long>(s);
    return DeltaResult{std::move(doi), comparator, s, r, delta, status_for_delta(delta)};
}

const StatusRow& CorpusTable::row(AuditStatus status) const {
    static const StatusRow empty{};
    auto it = rows.find(status);
    return it == rows.end() ? empty : it->second;
}

} // namespace refaudit
