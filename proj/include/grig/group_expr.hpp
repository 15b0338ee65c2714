#pragma once

// Group construction mini-language:
//   free(rank) cycle(n) grid(dim) trivial() gamma_free() matrix_h()
//   grig(omega, level) functor(omega, k, base) gj(omega, J, radius)
//   product(expr, ...)
// omega is "(012)*" or "pre|period"; J is "{1,3}", "geom(a,r)" (a, ar, ar^2,
// ...) or a union of those joined by '+'.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grig/marked_group.hpp"

namespace grig {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t column)
      : std::invalid_argument("column " + std::to_string(column + 1) + ": " + message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

GroupPtr parse_group(std::string_view text);

/// Members of a J expression up to `bound` (inclusive), sorted.
std::vector<std::size_t> parse_j_set(std::string_view text, std::size_t bound);

}  // namespace grig
