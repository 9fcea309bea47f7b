#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fra {

using Letter = std::uint32_t;
using StateId = std::uint32_t;

/// A finite word over an alphabet, letters stored as indices.
using Word = std::vector<Letter>;

/// Ordered set of distinct, nonempty names. Iteration order is declaration
/// order, which every enumeration downstream relies on.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> names);

  /// Appends a name and returns its index. Throws on duplicates or empty names.
  std::uint32_t add(std::string name);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(std::uint32_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::uint32_t> find(std::string_view name) const;
  /// Like find, but throws UnknownSymbol naming `what` on a miss.
  std::uint32_t index(std::string_view name, std::string_view what = "symbol") const;

  bool operator==(const SymbolTable& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

/// The alphabet A acted upon.
class Alphabet : public SymbolTable {
 public:
  using SymbolTable::SymbolTable;
};

/// The generating states S, some of which may be flagged as the identity.
class StateSet : public SymbolTable {
 public:
  StateSet() = default;
  explicit StateSet(std::vector<std::string> names, const std::vector<std::string>& identity = {});

  StateId add(std::string name, bool identity = false);
  void set_identity(StateId s, bool identity = true);
  bool is_identity(StateId s) const { return identity_.at(s); }
  std::vector<StateId> identity_states() const;

  bool operator==(const StateSet& other) const {
    return SymbolTable::operator==(other) && identity_ == other.identity_;
  }

 private:
  std::vector<bool> identity_;
};

std::string join_word(const SymbolTable& alphabet, const Word& w, std::string_view sep = " ");

}  // namespace fra
