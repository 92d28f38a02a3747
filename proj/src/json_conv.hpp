#pragma once

#include <nlohmann/json.hpp>

#include "model.hpp"

namespace refaudit {

// JSON shapes used by snapshot files, reports and the library API. Keys are
// emitted in a stable order so serialized output is byte-reproducible.
using ojson = nlohmann::ordered_json;

ojson to_json(const StructuredFields& f);
ojson to_json(const ReferenceRecord& r);
ojson to_json(const DeltaResult& d);

StructuredFields structured_fields_from_json(const nlohmann::json& j);
ReferenceRecord reference_record_from_json(const nlohmann::json& j);

ojson reference_list_to_json(const std::vector<ReferenceRecord>& refs);
std::vector<ReferenceRecord> reference_list_from_json(const nlohmann::json& j);

// Parses text as JSON; throws Error(parse) with `what` in the message when
// the text is not valid JSON.
nlohmann::json parse_json(const std::string& text, const std::string& what);

} // namespace refaudit
