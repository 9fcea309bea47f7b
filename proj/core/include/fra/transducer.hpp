#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fra/group_word.hpp"
#include "fra/symbols.hpp"

namespace fra {

enum class TransducerKind { asynchronous, finite_state };

/// Value of the table at (letter, state): the residual word and the image letter.
struct Transition {
  GroupWord output;
  Letter target = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// A transducer Φ: A × S → F_S × A.
///
/// The table may be partial or have non-permutation rows; such a transducer
/// can be inspected and validated but tracing through a broken entry throws.
/// Outputs never mention identity-flagged states.
class Transducer {
 public:
  Transducer(Alphabet alphabet, StateSet states, TransducerKind kind,
             std::vector<std::optional<Transition>> table);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const StateSet& states() const noexcept { return states_; }
  TransducerKind kind() const noexcept { return kind_; }
  bool is_finite_state() const noexcept { return kind_ == TransducerKind::finite_state; }

  const std::optional<Transition>& entry(Letter a, StateId s) const;
  /// Throws InvalidArgument if the entry is missing.
  const Transition& at(Letter a, StateId s) const;
  /// The unique b with at(b, s).target == out, if the row is a permutation.
  std::optional<Letter> preimage(StateId s, Letter out) const;

  /// Reduces a sequence of factors, erasing identity-flagged states.
  GroupWord word(std::span<const Factor> factors) const;
  GroupWord word(const GroupWord& w) const { return word(w.factors()); }
  /// Parses-free convenience: word from state names (suffix ' for inverse).
  GroupWord word(std::initializer_list<std::string_view> names) const;

  friend bool operator==(const Transducer&, const Transducer&) = default;

 private:
  std::size_t slot(Letter a, StateId s) const { return static_cast<std::size_t>(a) * states_.size() + s; }

  Alphabet alphabet_;
  StateSet states_;
  TransducerKind kind_;
  std::vector<std::optional<Transition>> table_;
  // preimage_[s * |A| + out] = b, or npos when not a permutation
  std::vector<Letter> preimage_;
};

/// Incrementally fills a transducer table.
class TransducerBuilder {
 public:
  TransducerBuilder(Alphabet alphabet, StateSet states, TransducerKind kind);

  /// Sets Φ(a, s) = (output, target). Throws on a second assignment of the same cell.
  TransducerBuilder& set(Letter a, StateId s, GroupWord output, Letter target);
  TransducerBuilder& set(std::string_view letter, std::string_view state,
                         std::initializer_list<std::string_view> output, std::string_view target);
  bool has(Letter a, StateId s) const { return cells_[slot(a, s)].has_value(); }

  /// Fills every unset cell with (s, a), the blanket rule for functionally
  /// recursive tables.
  TransducerBuilder& default_identity();

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const StateSet& states() const noexcept { return states_; }

  /// Identity-flagged rows are completed with (1, a) where unset.
  Transducer build() const;

 private:
  std::size_t slot(Letter a, StateId s) const { return static_cast<std::size_t>(a) * states_.size() + s; }
  GroupWord named(std::initializer_list<std::string_view> names) const;

  Alphabet alphabet_;
  StateSet states_;
  TransducerKind kind_;
  std::vector<std::optional<Transition>> cells_;
};

/// Problems found by validate(); empty means well formed.
struct Report {
  std::vector<std::string> problems;
  bool ok() const noexcept { return problems.empty(); }
};

/// Checks totality, per-state letter permutations, identity flags and the
/// finite-state output shape. Never throws.
Report validate(const Transducer& t);

}  // namespace fra
