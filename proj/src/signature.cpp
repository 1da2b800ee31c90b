#include "lhg/signature.hpp"

#include "lexer.hpp"
#include "lhg/error.hpp"

namespace lhg {

namespace {

bool is_keyword(const std::string& name) {
  return name == "id" || name == "swap" || name == "tr" || name == "objects";
}

void check_declared(const Word& w, const std::set<std::string>& objects, const std::string& name) {
  for (const auto& label : w) {
    if (!label.empty() && !objects.count(label)) {
      throw Error("generator '" + name + "' uses undeclared object '" + label + "'");
    }
  }
}

}  // namespace

void Signature::add(const std::string& name, Word dom, Word cod) {
  if (name.empty() || name == kIdentityLabel || is_keyword(name)) {
    throw Error("reserved generator name '" + name + "'");
  }
  if (generators_.count(name)) throw Error("duplicate generator '" + name + "'");
  if (objects_) {
    check_declared(dom, *objects_, name);
    check_declared(cod, *objects_, name);
  }
  generators_.emplace(name, GeneratorType{std::move(dom), std::move(cod)});
}

void Signature::declare_objects(std::set<std::string> objects) {
  for (const auto& [name, type] : generators_) {
    check_declared(type.dom, objects, name);
    check_declared(type.cod, objects, name);
  }
  objects_ = std::move(objects);
}

const GeneratorType* Signature::find(const std::string& name) const {
  auto it = generators_.find(name);
  return it == generators_.end() ? nullptr : &it->second;
}

std::set<std::string> Signature::used_objects() const {
  std::set<std::string> out;
  for (const auto& [name, type] : generators_) {
    for (const auto& l : type.dom) if (!l.empty()) out.insert(l);
    for (const auto& l : type.cod) if (!l.empty()) out.insert(l);
  }
  return out;
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  std::optional<std::set<std::string>> objects;
  struct Pending {
    std::string name;
    Word dom, cod;
    std::size_t line;
  };
  std::vector<Pending> pending;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    detail::TokenStream ts(detail::tokenize(line, line_no));
    std::string name = ts.expect_name();
    ts.expect_symbol(":");
    if (name == "objects") {
      std::set<std::string> objs;
      if (!ts.at_end()) {
        objs.insert(ts.expect_name());
        while (ts.accept_symbol(",")) objs.insert(ts.expect_name());
      }
      if (!ts.at_end()) ts.fail("expected end of line");
      objects = std::move(objs);
      continue;
    }
    Word dom = ts.expect_word();
    ts.expect_symbol("->");
    Word cod = ts.expect_word();
    if (!ts.at_end()) ts.fail("expected end of line");
    pending.push_back({std::move(name), std::move(dom), std::move(cod), line_no});
  }
  for (auto& p : pending) {
    try {
      sig.add(p.name, std::move(p.dom), std::move(p.cod));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), p.line, 1);
    }
  }
  if (objects) {
    try {
      sig.declare_objects(std::move(*objects));
    } catch (const Error& e) {
      throw ParseError(e.what(), 1, 1);
    }
  }
  return sig;
}

std::string render_signature(const Signature& sig) {
  std::string out;
  if (sig.objects()) {
    out += "objects:";
    bool first = true;
    for (const auto& o : *sig.objects()) {
      out += first ? " " : ", ";
      out += o;
      first = false;
    }
    out += "\n";
  }
  for (const auto& [name, type] : sig.generators()) {
    out += name + " : " + render_word(type.dom) + " -> " + render_word(type.cod) + "\n";
  }
  return out;
}

}  // namespace lhg
