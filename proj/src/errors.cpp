#include "errors.hpp"

namespace refaudit {

const char* errc_name(errc code) {
    switch (code) {
    case errc::none: return "Ok";
    case errc::malformed_doi: return "MalformedDoi";
    case errc::unrecognized_report_format: return "UnrecognizedReportFormat";
    case errc::not_registered: return "NotRegistered";
    case errc::transport: return "TransportError";
    case errc::parse: return "ParseError";
    case errc::cache_miss: return "CacheMiss";
    case errc::extraction_failed: return "ExtractionFailed";
    case errc::header_mismatch: return "HeaderMismatch";
    case errc::row_parse: return "RowParseError";
    case errc::encoding: return "EncodingError";
    case errc::duplicate_row: return "DuplicateRow";
    case errc::source_unavailable: return "SourceUnavailable";
    case errc::mixed_comparators: return "MixedComparators";
    case errc::division_by_zero_corpus: return "DivisionByZeroCorpus";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::io: return "IoError";
    case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

void raise(errc code, std::string message) {
    throw Error(code, std::move(message));
}

} // namespace refaudit
