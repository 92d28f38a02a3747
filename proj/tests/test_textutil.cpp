#include <doctest.h>

#include "textutil.hpp"

using namespace refaudit;

TEST_CASE("trim and case helpers") {
    CHECK(trim("  a b \t\n") == "a b");
    CHECK(trim("") == "");
    CHECK(trim(" \r\n ") == "");
    CHECK(to_lower("MiXeD 123") == "mixed 123");
    CHECK(iequals("Crossref", "cRoSsReF"));
    CHECK_FALSE(iequals("a", "ab"));
    CHECK(istarts_with("IJSRSET21852", "ijsrset"));
    CHECK_FALSE(istarts_with("IJSRST", "ijsrset"));
    CHECK(ifind("Journal of X", "OF x") == 8);
    CHECK(ifind("abc", "zz") == std::string_view::npos);
}

TEST_CASE("split and whitespace collapse") {
    CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(split("", ',') == std::vector<std::string>{""});
    CHECK(collapse_whitespace("  a \t b\r\nc  ") == "a b c");
}

TEST_CASE("percent encoding covers the reserved set") {
    CHECK(percent_encode("abcXYZ019-._~") == "abcXYZ019-._~");
    CHECK(percent_encode("10.32628/IJSRST229212") == "10.32628%2FIJSRST229212");
    CHECK(percent_encode("a b+c") == "a%20b%2Bc");
    CHECK(percent_encode("\xC3\xA9") == "%C3%A9"); // é
}

TEST_CASE("diacritic folding maps accented latin to ascii") {
    CHECK(fold_diacritics("Jose Alvarez") == "Jose Alvarez");
    CHECK(fold_diacritics("Jos\xC3\xA9 \xC3\x81lvarez") == "Jose Alvarez");
    CHECK(fold_diacritics("M\xC3\xBCller") == "Muller");
    CHECK(fold_diacritics("Fran\xC3\xA7ois") == "Francois");
}

TEST_CASE("utf-8 validation reports the first bad byte offset") {
    CHECK_FALSE(find_invalid_utf8("plain ascii"));
    CHECK_FALSE(find_invalid_utf8("Jos\xC3\xA9"));
    CHECK(find_invalid_utf8(std::string_view("ab\xFF", 3)) == 2);
    // continuation byte without a lead
    CHECK(find_invalid_utf8(std::string_view("x\x80y", 3)) == 1);
    // truncated two-byte sequence at end of input
    CHECK(find_invalid_utf8(std::string_view("ab\xC3", 3)) == 2);
    // overlong encoding of '/'
    CHECK(find_invalid_utf8(std::string_view("\xC0\xAF", 2)) == 0);
    // CESU-style surrogate half
    CHECK(find_invalid_utf8(std::string_view("\xED\xA0\x80", 3)) == 0);
}

TEST_CASE("html entity decoding") {
    CHECK(decode_html_entities("Structures &amp; Buildings") == "Structures & Buildings");
    CHECK(decode_html_entities("&lt;li&gt;") == "<li>");
    CHECK(decode_html_entities("&#65;&#x42;") == "AB");
    CHECK(decode_html_entities("&nbsp;x") == " x");
    CHECK(decode_html_entities("5 &unknown; 6") == "5 &unknown; 6");
}

TEST_CASE("thousands separators") {
    CHECK(format_thousands(0) == "0");
    CHECK(format_thousands(999) == "999");
    CHECK(format_thousands(1000) == "1,000");
    CHECK(format_thousands(65836) == "65,836");
    CHECK(format_thousands(-24712) == "-24,712");
    CHECK(format_thousands(1234567890LL) == "1,234,567,890");
}
