// Hand-entered differentials of the two worked fixtures, variables x = x_1,
// y = x_2, for comparison up to signed permutation.
#pragma once

#include "hhl/complex.hpp"

namespace reference {

// "x", "-y", "1", "0", ...
inline hhl::Polynomial poly(const std::string& s) {
  if (s == "0") return {};
  const bool neg = s[0] == '-';
  const std::string body = neg ? s.substr(1) : s;
  hhl::exact::IntVector e(2);
  if (body == "x") e[0] = 1;
  else if (body == "y") e[1] = 1;
  else if (body != "1") throw std::invalid_argument("reference::poly: " + s);
  return {{hhl::exact::Integer(neg ? -1 : 1), e}};
}

inline hhl::PolyMatrix matrix(const std::vector<std::vector<std::string>>& rows) {
  hhl::PolyMatrix m{rows.size(), rows.empty() ? 0 : rows[0].size(), {}};
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (auto p = poly(rows[r][c]); !p.empty()) m.entries[{r, c}] = p;
  return m;
}

// Cuspidal fixture, as displayed (a row-vector convention map R^4 -> R^4).
inline hhl::PolyMatrix cusp_display() {
  return matrix({{"-1", "0", "0", "x"}, {"x", "-y", "0", "0"}, {"0", "1", "-1", "0"}, {"0", "0", "x", "-y"}});
}

// Torsion fixture: R^3 -> R^6 and R^6 -> R^3.
inline hhl::PolyMatrix torsion_d2() {
  return matrix({{"-x", "0", "1"}, {"y", "-1", "0"}, {"0", "1", "-x"}, {"-1", "0", "y"}, {"1", "-x", "0"}, {"0", "y", "-1"}});
}
inline hhl::PolyMatrix torsion_d1() {
  return matrix({{"0", "1", "1", "0", "-y", "-x"}, {"-y", "-x", "0", "1", "1", "0"}, {"1", "0", "-y", "-x", "0", "1"}});
}

}  // namespace reference
