#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "lhg/word.hpp"

namespace lhg {

struct GeneratorType {
  Word dom;
  Word cod;
  friend bool operator==(const GeneratorType&, const GeneratorType&) = default;
};

// Reserved label of the edges inserted by wire expansion. It cannot be
// written in the term language and never appears in a signature.
inline constexpr std::string_view kIdentityLabel = "%id";

class Signature {
 public:
  Signature() = default;

  // Throws Error on a duplicate or reserved name, or on an object label that
  // is not declared when the object set is explicit.
  void add(const std::string& name, Word dom, Word cod);
  void declare_objects(std::set<std::string> objects);

  const GeneratorType* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const std::map<std::string, GeneratorType>& generators() const { return generators_; }
  const std::optional<std::set<std::string>>& objects() const { return objects_; }

  // Every non-anonymous label used by some generator.
  std::set<std::string> used_objects() const;

 private:
  std::map<std::string, GeneratorType> generators_;
  std::optional<std::set<std::string>> objects_;
};

// Lines of the form `name : WORD -> WORD`, optionally `objects: A, B`.
// `#` starts a comment.
Signature parse_signature(std::string_view text);
std::string render_signature(const Signature& sig);

}  // namespace lhg
