#include "smtjsim/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "smtjsim/error.hpp"

namespace smtjsim {

char to_char(Trit t) {
  switch (t) {
    case Trit::kZero: return '0';
    case Trit::kOne: return '1';
    default: return 'X';
  }
}

Trit trit_from_char(char c) {
  switch (c) {
    case '0': return Trit::kZero;
    case '1': return Trit::kOne;
    case 'X':
    case 'x': return Trit::kX;
    default:
      throw_validation(std::string("invalid ternary symbol '") + c +
                       "' (expected 0, 1, or X)");
  }
}

std::string format_word(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Trit t : w) s.push_back(to_char(t));
  return s;
}

Word word_from_string(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) w.push_back(trit_from_char(c));
  return w;
}

bool trit_matches(Trit stored, Trit search) {
  return !((stored == Trit::kZero && search == Trit::kOne) ||
           (stored == Trit::kOne && search == Trit::kZero));
}

bool word_matches(const Word& stored, const Word& search) {
  if (stored.size() != search.size())
    throw_validation("word_matches: word lengths differ");
  for (size_t i = 0; i < stored.size(); ++i)
    if (!trit_matches(stored[i], search[i])) return false;
  return true;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (const auto& c : columns) field(c);
  end_row();
}

void CsvWriter::field(const std::string& s) {
  if (row_open_) out_ << ',';
  row_open_ = true;
  if (s.find_first_of(",\"\n") != std::string::npos) {
    out_ << '"';
    for (char c : s) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  } else {
    out_ << s;
  }
}

void CsvWriter::field(double v) {
  if (row_open_) out_ << ',';
  row_open_ = true;
  out_ << format_double(v);
}

void CsvWriter::field(long long v) {
  if (row_open_) out_ << ',';
  row_open_ = true;
  out_ << v;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_open_ = false;
}

std::vector<Word> parse_word_lines(const std::string& text,
                                   const std::string& origin) {
  std::vector<Word> words;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // strip trailing comment
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim whitespace
    auto b = line.find_first_not_of(" \t");
    auto e = line.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    line = line.substr(b, e - b + 1);
    Word w;
    w.reserve(line.size());
    for (size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (c != '0' && c != '1' && c != 'X' && c != 'x')
        throw_validation(origin + ":" + std::to_string(line_no) +
                         ": invalid symbol '" + std::string(1, c) +
                         "' at position " + std::to_string(i + 1) +
                         " (expected 0, 1, or X)");
      w.push_back(trit_from_char(c));
    }
    words.push_back(std::move(w));
  }
  return words;
}

std::vector<Word> parse_word_file(const std::string& path) {
  return parse_word_lines(read_text_file(path), path);
}

std::string resolve_output_dir(const std::string& cli_flag,
                               const std::string& config_value) {
  if (!cli_flag.empty()) return cli_flag;
  if (!config_value.empty()) return config_value;
  const char* env = std::getenv("SMTJSIM_OUTPUT_DIR");
  if (env && *env) return env;
  return ".";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_validation("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_runtime("cannot write file: " + path);
  out << content;
  if (!out) throw_runtime("write failure: " + path);
}

}  // namespace smtjsim
