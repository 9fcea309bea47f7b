#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fra/symbols.hpp"

namespace fra {

/// One signed generator: a state or its formal inverse.
struct Factor {
  StateId state = 0;
  bool inverse = false;

  Factor inverted() const { return {state, !inverse}; }
  bool cancels(const Factor& other) const { return state == other.state && inverse != other.inverse; }

  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// An element of the free group on the states, always kept freely reduced.
///
/// Identity-flagged states are not known here; erasing them is the job of
/// Transducer::word(), which every public entry point goes through.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::span<const Factor> factors);
  GroupWord(std::initializer_list<Factor> factors)
      : GroupWord(std::span<const Factor>(factors.begin(), factors.size())) {}

  static GroupWord generator(StateId s, bool inverse = false) { return GroupWord{Factor{s, inverse}}; }

  std::span<const Factor> factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }
  const Factor& operator[](std::size_t i) const { return factors_[i]; }

  /// Appends one factor, cancelling against the tail if possible.
  void push_back(Factor f);
  GroupWord& operator*=(const GroupWord& rhs);
  friend GroupWord operator*(GroupWord lhs, const GroupWord& rhs) { return lhs *= rhs; }

  GroupWord inverse() const;
  /// Integer power; negative exponents invert.
  GroupWord power(std::int64_t k) const;
  /// Cyclic rotation moving the first `k` factors to the end (a conjugate).
  GroupWord rotated(std::size_t k) const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  /// Shortlex: shorter first, then lexicographic on factors.
  friend std::strong_ordering operator<=>(const GroupWord& a, const GroupWord& b);

  std::size_t hash() const noexcept;

 private:
  std::vector<Factor> factors_;
};

/// a⁻¹ b⁻¹ a b
GroupWord commutator(const GroupWord& a, const GroupWord& b);
/// by⁻¹ a by
GroupWord conjugate(const GroupWord& a, const GroupWord& by);

/// Renders a word as whitespace separated state names, `'` marking inverses.
/// The empty word renders as "1".
std::string to_string(const GroupWord& w, const StateSet& states);

struct GroupWordHash {
  std::size_t operator()(const GroupWord& w) const noexcept { return w.hash(); }
};

}  // namespace fra
