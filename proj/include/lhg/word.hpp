#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lhg {

// An object of the free category: a sequence of object labels. The empty
// string is the anonymous label, so a PROP object n is n anonymous labels.
using Word = std::vector<std::string>;

inline Word nat(std::size_t n) { return Word(n, std::string()); }

bool is_anonymous(const Word& w);
Word concat(const Word& a, const Word& b);
Word slice(const Word& w, std::size_t from, std::size_t to);
bool has_prefix(const Word& w, const Word& prefix);

// `3` for anonymous words, `[A,B]` otherwise.
std::string render_word(const Word& w);

}  // namespace lhg
