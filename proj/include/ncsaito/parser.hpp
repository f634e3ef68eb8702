#pragma once

#include <string>
#include <vector>

#include "ncsaito/series.hpp"

namespace ncsaito {

// Grammar:
//   expr     := term (('+'|'-') term)*
//   term     := [rational ('*')?] factor ('*' factor)*
//   factor   := var ('^' uint)?
//   rational := int ('/' uint)?
// Juxtaposition is not allowed; whitespace is insignificant; the
// noncommutative product order is the written order.
// Throws Error(ParseError) with a byte offset, or Error(UnknownVariable).
Series parse_series(const std::string& src, const std::vector<std::string>& vars,
                    int trunc);

std::string word_to_string(const Word& w, const std::vector<std::string>& vars);
std::string series_to_string(const Series& f, const std::vector<std::string>& vars);

}  // namespace ncsaito
