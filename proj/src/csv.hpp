#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace refaudit {

// Streaming CSV reader: comma-separated, double-quote quoting with ""
// escapes, quoted cells may contain embedded newlines. Accepts UTF-8 with
// or without a leading byte-order mark; any other encoding raises
// Error(encoding) naming the offending byte offset. Malformed quoting
// raises Error(row_parse) naming the 1-based record number.
class CsvReader {
  public:
    explicit CsvReader(std::istream& in);

    // Reads the next record into `row`; returns false at end of input.
    // Blank lines are skipped.
    bool next(std::vector<std::string>& row);

    // 1-based ordinal of the record most recently returned (the header row
    // is record 1).
    std::size_t record_number() const { return record_number_; }

  private:
    int get();
    [[noreturn]] void fail_row(const std::string& why) const;

    std::istream& in_;
    std::size_t byte_offset_ = 0;
    std::size_t record_number_ = 0;
    // Incremental UTF-8 validation state: continuation bytes still
    // expected, and the lead byte that opened the sequence.
    int pending_continuation_ = 0;
    unsigned char lead_byte_ = 0;
};

} // namespace refaudit
