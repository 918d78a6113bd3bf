#include "catlas/csv.hpp"

#include <fstream>
#include <sstream>

#include "catlas/errors.hpp"

namespace catlas::csv {

std::vector<Row> parse(std::string_view text) {
    if (text.starts_with("\xef\xbb\xbf"))
        text.remove_prefix(3);

    std::vector<Row> rows;
    Row row;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool row_has_content = false;
    size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
    };

    for (size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n')
                    ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || field_was_quoted)
                throw ParseError("csv: unexpected quote in unquoted field at line " +
                                 std::to_string(line));
            in_quotes = true;
            field_was_quoted = true;
            row_has_content = true;
            break;
        case ',':
            end_field();
            row_has_content = true;
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n')
                break;  // swallowed; '\n' ends the row
            [[fallthrough]];
        case '\n':
            if (row_has_content || !row.empty())
                end_row();  // blank lines are skipped
            ++line;
            break;
        default:
            field += c;
            row_has_content = true;
            break;
        }
    }
    if (in_quotes)
        throw ParseError("csv: unterminated quoted field at end of input");
    if (row_has_content || !field.empty() || !row.empty())
        end_row();
    return rows;
}

std::vector<Row> parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open input file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string escape(std::string_view field) {
    const bool needs_quoting =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quoting)
        return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out += '"';
    for (const char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_row(std::string& out, std::span<const std::string> fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i != 0)
            out += ',';
        out += escape(fields[i]);
    }
    out += '\n';
}

}  // namespace catlas::csv
