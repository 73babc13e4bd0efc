#pragma once

#include <string_view>

#include "freeiso/cli/text.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/words.hpp"

namespace freeiso::testing {

inline Presentation P(std::string_view text) { return cli::parse_presentation(text); }

inline Word W(const Presentation& p, std::string_view text) {
  if (text == "1") return Word();
  return cli::parse_word(text, p.generator_names());
}

// A word of F_rank written over x, y, z.
inline Word F(std::size_t rank, std::string_view text) { return W(Presentation::free(rank), text); }

}  // namespace freeiso::testing
