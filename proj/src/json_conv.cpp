#include "json_conv.hpp"

#include "errors.hpp"

namespace refaudit {

ojson to_json(const StructuredFields& f) {
    ojson j = ojson::object();
    if (!f.authors.empty()) j["authors"] = f.authors;
    if (f.year) j["year"] = *f.year;
    if (f.title) j["title"] = *f.title;
    if (f.container) j["container"] = *f.container;
    if (f.doi) j["doi"] = f.doi->value();
    return j;
}

ojson to_json(const ReferenceRecord& r) {
    ojson j = ojson::object();
    j["raw"] = r.raw;
    if (r.structured) j["structured"] = to_json(*r.structured);
    return j;
}

ojson to_json(const DeltaResult& d) {
    ojson j = ojson::object();
    j["doi"] = d.doi.value();
    j["comparator"] = source_kind_name(d.comparator);
    j["refs_in_html"] = d.s;
    j["refs_in_source"] = d.r;
    j["delta"] = d.delta;
    j["status"] = audit_status_name(d.status);
    return j;
}

StructuredFields structured_fields_from_json(const nlohmann::json& j) {
    if (!j.is_object()) raise(errc::parse, "structured fields must be an object");
    StructuredFields f;
    if (j.contains("authors"))
        for (const auto& a : j.at("authors")) f.authors.push_back(a.get<std::string>());
    if (j.contains("year")) f.year = j.at("year").get<int>();
    if (j.contains("title")) f.title = j.at("title").get<std::string>();
    if (j.contains("container")) f.container = j.at("container").get<std::string>();
    if (j.contains("doi")) f.doi = Doi::parse(j.at("doi").get<std::string>());
    return f;
}

ReferenceRecord reference_record_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("raw"))
        raise(errc::parse, "reference record needs a raw field");
    std::optional<StructuredFields> structured;
    if (j.contains("structured")) structured = structured_fields_from_json(j.at("structured"));
    return ReferenceRecord::make(j.at("raw").get<std::string>(), std::move(structured));
}

ojson reference_list_to_json(const std::vector<ReferenceRecord>& refs) {
    ojson j = ojson::array();
    for (const auto& r : refs) j.push_back(to_json(r));
    return j;
}

std::vector<ReferenceRecord> reference_list_from_json(const nlohmann::json& j) {
    if (!j.is_array()) raise(errc::parse, "reference list must be an array");
    std::vector<ReferenceRecord> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(reference_record_from_json(e));
    return out;
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) raise(errc::parse, what + ": invalid JSON");
    return j;
}

} // namespace refaudit
