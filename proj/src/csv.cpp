#include "csv.hpp"

#include "errors.hpp"

namespace refaudit {

CsvReader::CsvReader(std::istream& in) : in_(in) {
    // Tolerate a UTF-8 byte-order mark.
    if (in_.peek() == 0xEF) {
        char bom[3] = {};
        in_.read(bom, 3);
        if (in_.gcount() == 3 && bom[0] == '\xEF' && bom[1] == '\xBB' && bom[2] == '\xBF') {
            byte_offset_ = 3;
        } else {
            for (int i = static_cast<int>(in_.gcount()) - 1; i >= 0; --i) in_.putback(bom[i]);
        }
    }
}

void CsvReader::fail_row(const std::string& why) const {
    raise(errc::row_parse, "row " + std::to_string(record_number_) + ": " + why);
}

// Reads one byte, validating the UTF-8 stream as it goes. Multi-byte
// sequences never straddle CSV structure (delimiters are ASCII), so
// validating the raw stream is equivalent to validating every cell.
int CsvReader::get() {
    int ci = in_.get();
    if (ci == std::istream::traits_type::eof()) {
        if (pending_continuation_ > 0)
            raise(errc::encoding, "truncated UTF-8 sequence at byte offset " +
                                      std::to_string(byte_offset_));
        return ci;
    }
    const auto b = static_cast<unsigned char>(ci);
    const std::size_t offset = byte_offset_++;
    auto bad = [&]() {
        raise(errc::encoding, "invalid UTF-8 at byte offset " + std::to_string(offset));
    };
    if (pending_continuation_ > 0) {
        if ((b & 0xC0) != 0x80) bad();
        if (lead_byte_ != 0) { // first continuation byte carries range limits
            if (lead_byte_ == 0xE0 && b < 0xA0) bad();
            if (lead_byte_ == 0xED && b > 0x9F) bad();
            if (lead_byte_ == 0xF0 && b < 0x90) bad();
            if (lead_byte_ == 0xF4 && b > 0x8F) bad();
            lead_byte_ = 0;
        }
        --pending_continuation_;
        return ci;
    }
    if (b < 0x80) return ci;
    if (b >= 0xC2 && b <= 0xDF) {
        pending_continuation_ = 1;
        lead_byte_ = 0;
    } else if (b >= 0xE0 && b <= 0xEF) {
        pending_continuation_ = 2;
        lead_byte_ = b;
    } else if (b >= 0xF0 && b <= 0xF4) {
        pending_continuation_ = 3;
        lead_byte_ = b;
    } else {
        bad();
    }
    return ci;
}

bool CsvReader::next(std::vector<std::string>& row) {
    row.clear();
    enum class State { start_of_field, unquoted, quoted, after_quote };

    while (true) {
        ++record_number_;
        std::string field;
        State state = State::start_of_field;
        bool line_had_content = false;
        bool record_done = false;
        bool at_eof = false;

        while (!record_done) {
            int ci = get();
            if (ci == std::istream::traits_type::eof()) {
                if (state == State::quoted) fail_row("unterminated quoted cell");
                at_eof = true;
                break;
            }
            char c = static_cast<char>(ci);
            switch (state) {
                case State::start_of_field:
                    if (c == '"') {
                        state = State::quoted;
                        line_had_content = true;
                    } else if (c == ',') {
                        row.push_back("");
                        line_had_content = true;
                    } else if (c == '\r' || c == '\n') {
                        if (c == '\r' && in_.peek() == '\n') get();
                        record_done = true;
                    } else {
                        field.push_back(c);
                        state = State::unquoted;
                        line_had_content = true;
                    }
                    break;
                case State::unquoted:
                    if (c == ',') {
                        row.push_back(std::move(field));
                        field.clear();
                        state = State::start_of_field;
                    } else if (c == '\r' || c == '\n') {
                        if (c == '\r' && in_.peek() == '\n') get();
                        record_done = true;
                    } else {
                        field.push_back(c);
                    }
                    break;
                case State::quoted:
                    if (c == '"')
                        state = State::after_quote;
                    else
                        field.push_back(c);
                    break;
                case State::after_quote:
                    if (c == '"') {
                        field.push_back('"');
                        state = State::quoted;
                    } else if (c == ',') {
                        row.push_back(std::move(field));
                        field.clear();
                        state = State::start_of_field;
                    } else if (c == '\r' || c == '\n') {
                        if (c == '\r' && in_.peek() == '\n') get();
                        record_done = true;
                    } else {
                        fail_row(std::string("unexpected '") + c + "' after closing quote");
                    }
                    break;
            }
        }

        if (!line_had_content) {
            if (at_eof) {
                --record_number_;
                return false;
            }
            --record_number_; // blank line: not a record
            continue;
        }
        row.push_back(std::move(field));
        return true;
    }
}

} // namespace refaudit
