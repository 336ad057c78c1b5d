#pragma once

#include <string>
#include <vector>

namespace smtjsim {

enum class Trit : int { kZero = 0, kOne = 1, kX = 2 };

using Word = std::vector<Trit>;

char to_char(Trit t);
Trit trit_from_char(char c);  // accepts '0', '1', 'X'/'x'; else validation error

std::string format_word(const Word& w);
Word word_from_string(const std::string& s);

// Ternary match rule: only (stored 0, search 1) and (stored 1, search 0)
// mismatch; X matches anything on either side.
bool trit_matches(Trit stored, Trit search);
bool word_matches(const Word& stored, const Word& search);

}  // namespace smtjsim
