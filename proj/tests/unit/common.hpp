#pragma once

#include <string>

#include "doctest.h"
#include "freeiso/cli/text.hpp"
#include "helpers.hpp"

namespace doctest {

template <>
struct StringMaker<freeiso::Word> {
  static String convert(const freeiso::Word& w) {
    std::string out;
    for (freeiso::Letter l : w.letters()) {
      out += static_cast<char>('a' + l.gen());
      if (l.is_inverse()) out += '\'';
    }
    return out.empty() ? "1" : out.c_str();
  }
};

}  // namespace doctest

using namespace freeiso;
using namespace freeiso::testing;
