#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freeiso/error.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/rewriting.hpp"
#include "freeiso/words.hpp"

namespace freeiso::cli {

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error("position " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// <a,b | [a,b], a^2*b^-3>
Presentation parse_presentation(std::string_view text);
std::string print_presentation(const Presentation& p);

// Letters exactly as written (no free reduction).
LetterString parse_letters(std::string_view text, std::span<const std::string> names);
Word parse_word(std::string_view text, std::span<const std::string> names);

// Consecutive equal letters are grouped as powers; the empty word prints as 1.
std::string print_letters(std::span<const Letter> letters, std::span<const std::string> names);
std::string print_word(const Word& w, std::span<const std::string> names);

// Splits on commas that are not inside brackets.
std::vector<std::string> split_top_level(std::string_view text);

// Rewriting-system fixture:
//   order: a a^-1 b b^-1
//   rule: b*a -> a*b
// Lines starting with # are comments; an empty right side or 1 means the
// empty word. Without an order line the default order is used.
RewritingSystem parse_rewriting_fixture(std::string_view text, const Presentation& p);
std::string print_rewriting_fixture(const RewritingSystem& rs, const Presentation& p);

// Contents of a presentation file with # comment lines removed.
std::string strip_comments(std::string_view text);

}  // namespace freeiso::cli
