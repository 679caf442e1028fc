// Small CSV and file helpers with a fixed number format so repeated runs
// emit byte-identical output.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace stagsim {

std::string format_double(double v);
std::string join_csv(const std::vector<std::string>& fields);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

// Minimal reader used by schema tests: splits on commas and newlines, no
// quoting (our writers never emit quoted fields).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

} // namespace stagsim
