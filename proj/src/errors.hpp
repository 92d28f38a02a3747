#pragma once

#include <stdexcept>
#include <string>

namespace refaudit {

// Stable error taxonomy; the C API maps these one-to-one onto status codes.
enum class errc {
    none = 0,
    malformed_doi,
    unrecognized_report_format,
    not_registered,
    transport,
    parse,
    cache_miss,
    extraction_failed,
    header_mismatch,
    row_parse,
    encoding,
    duplicate_row,
    source_unavailable,
    mixed_comparators,
    division_by_zero_corpus,
    invalid_argument,
    io,
    internal,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
  public:
    Error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] void raise(errc code, std::string message);

} // namespace refaudit
