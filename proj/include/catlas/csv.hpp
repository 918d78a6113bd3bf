#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace catlas::csv {

using Row = std::vector<std::string>;

// RFC-4180 style parser: quoted fields, doubled-quote escapes, CR/LF or LF
// line ends, embedded newlines inside quotes. A UTF-8 BOM at the start is
// skipped. Throws ParseError on unterminated quotes or stray quote chars.
std::vector<Row> parse(std::string_view text);

std::vector<Row> parse_file(const std::filesystem::path& path);

// Quotes the field only when needed.
std::string escape(std::string_view field);

void append_row(std::string& out, std::span<const std::string> fields);

}  // namespace catlas::csv
