#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "smtjsim/ternary.hpp"

namespace smtjsim {

// Minimal CSV emitter: comma separator, LF line endings, doubles at full
// round-trip precision (%.17g), strings quoted when they contain a comma,
// quote, or newline (quotes doubled).
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  void field(const std::string& s);
  void field(double v);
  void field(long long v);
  void field(int v) { field(static_cast<long long>(v)); }
  void end_row();

 private:
  std::ostream& out_;
  bool row_open_ = false;
};

std::string format_double(double v);  // %.17g

// Word list file: one {0,1,X} word per line, blank lines and '#' comments
// ignored. Parse failures name the line and the offending symbol position.
std::vector<Word> parse_word_file(const std::string& path);
std::vector<Word> parse_word_lines(const std::string& text,
                                   const std::string& origin);

// Output directory resolution precedence: CLI flag, then config value, then
// the SMTJSIM_OUTPUT_DIR environment variable, then the current directory.
std::string resolve_output_dir(const std::string& cli_flag,
                               const std::string& config_value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace smtjsim
