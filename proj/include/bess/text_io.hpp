#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bess {

/// Malformed or unreadable input. `line()` is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& message, std::size_t line = 0);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct TextLine {
    std::size_t number;
    std::string_view text;
};

/// Non-blank lines with '#' comments stripped and surrounding whitespace trimmed.
std::vector<TextLine> content_lines(std::string_view text);

std::vector<std::string> split_fields(std::string_view line, char delimiter = ',');
std::string_view trim(std::string_view s);

/// Whole-field numeric parses; throw InputError citing `line` on any junk.
double parse_number(std::string_view field, std::size_t line, std::string_view what);
int parse_integer(std::string_view field, std::size_t line, std::string_view what);
bool looks_numeric(std::string_view field);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace bess
