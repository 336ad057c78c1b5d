#pragma once

#include <string>
#include <vector>

#include "smtjsim/cell.hpp"

namespace smtjsim {

// Per-pair resistances realized by an encoding on a table, plus the extrema
// the column formulas need.
struct PairResistances {
  double r[3][3] = {};  // [stored][search], Trit-indexed
  double r_match_worst = 0.0;  // highest matching-pair resistance
  double r_match_best = 0.0;   // lowest matching-pair resistance
  double r_mismatch = 0.0;     // lowest mismatching-pair resistance
};

PairResistances pair_resistances(const ResistanceTable& table,
                                 const EncodingScheme& e);

// Exact parallel combination, for brute-force checks and column physics.
double parallel_resistance(const std::vector<double>& r);

// All-match column of n cells at the worst-case match resistance.
double scaled_match_resistance(double r_match_worst, int n);

// Column of n cells with exactly one mismatching cell, the rest at the
// best-case match resistance.
double one_mismatch_resistance(double r_match_best, double r_mismatch, int n);

// Sensing margin: one-mismatch minus all-match column resistance.
double delta_r(double r_match_worst, double r_match_best, double r_mismatch,
               int n);

// Largest n (up to n_max) with positive sensing margin.
int max_column_length(double r_match_worst, double r_match_best,
                      double r_mismatch, int n_max = 64);

// Sense reference: geometric mean of the all-match and one-mismatch column
// resistances. Errors if the margin at n is not positive.
double reference_resistance(double r_match_worst, double r_match_best,
                            double r_mismatch, int n);

// Match iff r_col < r_ref - offset; ties sense as mismatch.
bool sense(double r_col, double r_ref, double offset = 0.0);

// Search-line pair decoding: X = (0,0), '0' = (0,1), '1' = (1,0).
// (1,1) is a validation error.
Trit decode_search_lines(bool line1, bool line2);
Word decode_search_word(const std::vector<std::pair<bool, bool>>& lines);

// Columns store words; a search broadcasts one word to every column. Long
// words are split into blocks of block_size cells (last block may be
// shorter); each block is sensed against a reference sized for its own
// length, and a column matches iff every block does.
struct TcamArray {
  std::vector<Word> stored;  // one word per column, equal lengths
  int block_size = 16;
};

void validate(const TcamArray& a, std::vector<std::string>& out,
              const std::string& prefix = "array");

struct BlockDetail {
  int column = 0;
  int block = 0;
  double r_col = 0.0;
  double r_ref = 0.0;
  bool match = false;
};

struct SearchResult {
  std::vector<bool> column_match;
  std::vector<BlockDetail> blocks;
};

// Senses each block's parallel cell resistance against its reference.
SearchResult search(const TcamArray& a, const ResistanceTable& table,
                    const EncodingScheme& e, const Word& search_word,
                    double sense_offset = 0.0);

// Parallel resistance of one block of a column under the search word.
double block_resistance(const ResistanceTable& table, const EncodingScheme& e,
                        const Word& stored, const Word& search_word, int begin,
                        int count);

std::string array_to_json(const TcamArray& a);
TcamArray array_from_json(const std::string& text);

}  // namespace smtjsim
