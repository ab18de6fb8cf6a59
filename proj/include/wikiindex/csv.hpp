#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wikiindex::csv {

using Row = std::vector<std::string>;

// RFC 4180: quoted fields may contain commas, quotes ("") and newlines.
// Throws InputError on an unterminated quote. A trailing newline does not
// produce an empty row; CRLF is accepted.
std::vector<Row> parse(std::string_view text);

// Quotes the field only when it needs it.
std::string escape(std::string_view field);
std::string format_row(const Row& row);

}  // namespace wikiindex::csv
