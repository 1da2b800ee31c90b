#include "lhg/word.hpp"

#include <algorithm>

namespace lhg {

bool is_anonymous(const Word& w) {
  return std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.empty(); });
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

bool has_prefix(const Word& w, const Word& prefix) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

std::string render_word(const Word& w) {
  if (is_anonymous(w)) return std::to_string(w.size());
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += w[i].empty() ? "_" : w[i];
  }
  return out + "]";
}

}  // namespace lhg
