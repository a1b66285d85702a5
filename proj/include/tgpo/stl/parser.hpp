#pragma once

#include <string_view>

#include "tgpo/stl/formula.hpp"

namespace tgpo::stl {

// Parse the textual formula grammar:
//
//   formula  := disj
//   disj     := conj ("|" conj)*
//   conj     := term ("&" term)*
//   term     := unary ("U" interval "(" formula ")")*
//   unary    := "True" | ident | "!" unary
//             | "F" interval "(" formula ")" | "G" interval "(" formula ")"
//             | "(" formula ")"
//   interval := "[" int "," int "]"
//
// Whitespace is insignificant. F/G/U act as operators only when followed by
// "[", so they remain usable as region labels. Throws ParseError with the
// offending position.
Formula parse(std::string_view text);

}  // namespace tgpo::stl
