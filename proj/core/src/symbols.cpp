#include "fra/symbols.hpp"

#include "fra/error.hpp"

namespace fra {

SymbolTable::SymbolTable(std::vector<std::string> names) {
  for (auto& n : names) add(std::move(n));
}

std::uint32_t SymbolTable::add(std::string name) {
  if (name.empty()) throw InvalidArgument("empty symbol name");
  auto index = static_cast<std::uint32_t>(names_.size());
  auto [it, inserted] = lookup_.emplace(name, index);
  if (!inserted) throw InvalidArgument("duplicate symbol '" + name + "'");
  names_.push_back(std::move(name));
  return index;
}

std::optional<std::uint32_t> SymbolTable::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t SymbolTable::index(std::string_view name, std::string_view what) const {
  if (auto i = find(name)) return *i;
  throw UnknownSymbol("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

StateSet::StateSet(std::vector<std::string> names, const std::vector<std::string>& identity) {
  for (auto& n : names) add(std::move(n));
  for (const auto& n : identity) set_identity(index(n, "state"));
}

StateId StateSet::add(std::string name, bool identity) {
  StateId s = SymbolTable::add(std::move(name));
  identity_.push_back(identity);
  return s;
}

void StateSet::set_identity(StateId s, bool identity) { identity_.at(s) = identity; }

std::vector<StateId> StateSet::identity_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < identity_.size(); ++s)
    if (identity_[s]) out.push_back(s);
  return out;
}

std::string join_word(const SymbolTable& alphabet, const Word& w, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += alphabet.name(w[i]);
  }
  return out;
}

}  // namespace fra
