#include "smtjsim/array.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace smtjsim {

PairResistances pair_resistances(const ResistanceTable& table,
                                 const EncodingScheme& e) {
  static const Trit kAll[3] = {Trit::kZero, Trit::kOne, Trit::kX};
  PairResistances pr;
  pr.r_match_worst = 0.0;
  pr.r_match_best = 0.0;
  pr.r_mismatch = 0.0;
  bool first_match = true, first_mm = true;
  for (Trit stored : kAll) {
    for (Trit search : kAll) {
      double r = cell_resistance(table, e, stored, search);
      pr.r[static_cast<int>(stored)][static_cast<int>(search)] = r;
      if (trit_matches(stored, search)) {
        if (first_match || r > pr.r_match_worst) pr.r_match_worst = r;
        if (first_match || r < pr.r_match_best) pr.r_match_best = r;
        first_match = false;
      } else {
        if (first_mm || r < pr.r_mismatch) pr.r_mismatch = r;
        first_mm = false;
      }
    }
  }
  return pr;
}

double parallel_resistance(const std::vector<double>& r) {
  if (r.empty()) throw_validation("parallel_resistance: empty resistor list");
  double g = 0.0;
  for (double x : r) {
    if (!(x > 0)) throw_validation("parallel_resistance: resistances must be > 0");
    g += 1.0 / x;
  }
  return 1.0 / g;
}

double scaled_match_resistance(double r_match_worst, int n) {
  if (n < 1) throw_validation("scaled_match_resistance: n must be >= 1");
  return r_match_worst / n;
}

double one_mismatch_resistance(double r_match_best, double r_mismatch,
                               int n) {
  if (n < 1) throw_validation("one_mismatch_resistance: n must be >= 1");
  return 1.0 / ((n - 1) / r_match_best + 1.0 / r_mismatch);
}

double delta_r(double r_match_worst, double r_match_best, double r_mismatch,
               int n) {
  return one_mismatch_resistance(r_match_best, r_mismatch, n) -
         scaled_match_resistance(r_match_worst, n);
}

int max_column_length(double r_match_worst, double r_match_best,
                      double r_mismatch, int n_max) {
  int best = 0;
  for (int n = 1; n <= n_max; ++n)
    if (delta_r(r_match_worst, r_match_best, r_mismatch, n) > 0.0) best = n;
  return best;
}

double reference_resistance(double r_match_worst, double r_match_best,
                            double r_mismatch, int n) {
  double r_match = scaled_match_resistance(r_match_worst, n);
  double r_1mm = one_mismatch_resistance(r_match_best, r_mismatch, n);
  if (!(r_1mm > r_match))
    throw_numerical(
        "reference_resistance: no positive sensing margin at this column "
        "length");
  return std::sqrt(r_match * r_1mm);
}

bool sense(double r_col, double r_ref, double offset) {
  return r_col < r_ref - offset;
}

Trit decode_search_lines(bool line1, bool line2) {
  if (line1 && line2)
    throw_validation("decode_search_lines: (1,1) is not a legal line pair");
  if (line1) return Trit::kOne;
  if (line2) return Trit::kZero;
  return Trit::kX;
}

Word decode_search_word(const std::vector<std::pair<bool, bool>>& lines) {
  Word w;
  w.reserve(lines.size());
  for (const auto& [l1, l2] : lines) w.push_back(decode_search_lines(l1, l2));
  return w;
}

void validate(const TcamArray& a, std::vector<std::string>& out,
              const std::string& prefix) {
  auto bad = [&](const std::string& m) { out.push_back(prefix + ": " + m); };
  if (a.stored.empty()) bad("array has no stored words");
  if (a.block_size < 1) bad("block_size must be >= 1");
  for (size_t i = 0; i < a.stored.size(); ++i) {
    if (a.stored[i].empty()) bad("stored word " + std::to_string(i) + " is empty");
    if (a.stored[i].size() != a.stored[0].size())
      bad("stored word " + std::to_string(i) + " length differs from word 0");
  }
}

double block_resistance(const ResistanceTable& table, const EncodingScheme& e,
                        const Word& stored, const Word& search_word, int begin,
                        int count) {
  std::vector<double> r;
  r.reserve(count);
  for (int k = begin; k < begin + count; ++k)
    r.push_back(cell_resistance(table, e, stored[k], search_word[k]));
  return parallel_resistance(r);
}

SearchResult search(const TcamArray& a, const ResistanceTable& table,
                    const EncodingScheme& e, const Word& search_word,
                    double sense_offset) {
  {
    std::vector<std::string> diag;
    validate(a, diag, "search.array");
    if (!diag.empty()) throw_validation(diag.front());
  }
  if (search_word.size() != a.stored[0].size())
    throw_validation("search: search word length differs from stored words");

  const int word_len = static_cast<int>(search_word.size());
  const PairResistances pr = pair_resistances(table, e);

  SearchResult res;
  res.column_match.assign(a.stored.size(), true);
  for (size_t col = 0; col < a.stored.size(); ++col) {
    for (int begin = 0, block = 0; begin < word_len;
         begin += a.block_size, ++block) {
      int count = std::min(a.block_size, word_len - begin);
      double r_col =
          block_resistance(table, e, a.stored[col], search_word, begin, count);
      // Reference sized for this block's actual cell count (the last block
      // of a word may be shorter).
      double r_ref = reference_resistance(pr.r_match_worst, pr.r_match_best,
                                          pr.r_mismatch, count);
      bool ok = sense(r_col, r_ref, sense_offset);
      res.blocks.push_back(
          {static_cast<int>(col), block, r_col, r_ref, ok});
      if (!ok) res.column_match[col] = false;
    }
  }
  return res;
}

std::string array_to_json(const TcamArray& a) {
  nlohmann::ordered_json j;
  j["block_size"] = a.block_size;
  std::vector<std::string> words;
  words.reserve(a.stored.size());
  for (const auto& w : a.stored) words.push_back(format_word(w));
  j["stored"] = words;
  return j.dump(2) + "\n";
}

TcamArray array_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw_validation(std::string("array_from_json: parse failure: ") +
                     e.what());
  }
  TcamArray a;
  try {
    a.block_size = j.at("block_size").get<int>();
    for (const auto& s : j.at("stored"))
      a.stored.push_back(word_from_string(s.get<std::string>()));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw_validation(std::string("array_from_json: bad field: ") + e.what());
  }
  std::vector<std::string> diag;
  validate(a, diag, "array_from_json");
  if (!diag.empty()) throw_validation(diag.front());
  return a;
}

}  // namespace smtjsim
