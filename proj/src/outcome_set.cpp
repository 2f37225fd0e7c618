#include "qtree/outcome_set.hpp"

#include <ostream>

namespace qtree {

std::string OutcomeSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t m : *this) {
    if (!first) out += ",";
    out += std::to_string(m);
    first = false;
  }
  return out + "}";
}

std::ostream& operator<<(std::ostream& os, OutcomeSet s) { return os << s.to_string(); }

}  // namespace qtree
