#include "fra/transducer.hpp"

#include <algorithm>
#include <limits>

#include "fra/error.hpp"

namespace fra {

namespace {

constexpr Letter kNoLetter = std::numeric_limits<Letter>::max();

GroupWord parse_names(const StateSet& states, std::initializer_list<std::string_view> names) {
  std::vector<Factor> f;
  for (auto n : names) {
    bool inv = !n.empty() && n.back() == '\'';
    if (inv) n.remove_suffix(1);
    f.push_back({states.index(n, "state"), inv});
  }
  return GroupWord(f);
}

}  // namespace

Transducer::Transducer(Alphabet alphabet, StateSet states, TransducerKind kind,
                       std::vector<std::optional<Transition>> table)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), kind_(kind), table_(std::move(table)) {
  if (alphabet_.empty()) throw InvalidArgument("alphabet must not be empty");
  if (table_.size() != alphabet_.size() * states_.size())
    throw InvalidArgument("transition table has wrong size");
  for (auto& cell : table_)
    if (cell) cell->output = word(cell->output);

  const std::size_t na = alphabet_.size();
  preimage_.assign(states_.size() * na, kNoLetter);
  for (StateId s = 0; s < states_.size(); ++s) {
    bool permutation = true;
    for (Letter a = 0; a < na && permutation; ++a) {
      const auto& cell = table_[slot(a, s)];
      if (!cell || cell->target >= na || preimage_[s * na + cell->target] != kNoLetter) {
        permutation = false;
        break;
      }
      preimage_[s * na + cell->target] = a;
    }
    if (!permutation) std::fill_n(preimage_.begin() + static_cast<std::ptrdiff_t>(s * na), na, kNoLetter);
  }
}

const std::optional<Transition>& Transducer::entry(Letter a, StateId s) const {
  if (a >= alphabet_.size()) throw UnknownSymbol("letter index out of range");
  if (s >= states_.size()) throw UnknownSymbol("state index out of range");
  return table_[slot(a, s)];
}

const Transition& Transducer::at(Letter a, StateId s) const {
  const auto& cell = entry(a, s);
  if (!cell)
    throw InvalidArgument("no transition for (" + alphabet_.name(a) + ", " + states_.name(s) + ")");
  return *cell;
}

std::optional<Letter> Transducer::preimage(StateId s, Letter out) const {
  if (s >= states_.size() || out >= alphabet_.size()) throw UnknownSymbol("index out of range");
  Letter b = preimage_[s * alphabet_.size() + out];
  if (b == kNoLetter) return std::nullopt;
  return b;
}

GroupWord Transducer::word(std::span<const Factor> factors) const {
  GroupWord out;
  for (const auto& f : factors) {
    if (f.state >= states_.size()) throw UnknownSymbol("state index out of range");
    if (!states_.is_identity(f.state)) out.push_back(f);
  }
  return out;
}

GroupWord Transducer::word(std::initializer_list<std::string_view> names) const {
  return word(parse_names(states_, names));
}

TransducerBuilder::TransducerBuilder(Alphabet alphabet, StateSet states, TransducerKind kind)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      kind_(kind),
      cells_(alphabet_.size() * states_.size()) {}

TransducerBuilder& TransducerBuilder::set(Letter a, StateId s, GroupWord output, Letter target) {
  if (a >= alphabet_.size() || target >= alphabet_.size()) throw UnknownSymbol("letter index out of range");
  if (s >= states_.size()) throw UnknownSymbol("state index out of range");
  auto& cell = cells_[slot(a, s)];
  if (cell)
    throw InvalidArgument("duplicate transition for (" + alphabet_.name(a) + ", " + states_.name(s) + ")");
  cell = Transition{std::move(output), target};
  return *this;
}

TransducerBuilder& TransducerBuilder::set(std::string_view letter, std::string_view state,
                                          std::initializer_list<std::string_view> output,
                                          std::string_view target) {
  return set(alphabet_.index(letter, "letter"), states_.index(state, "state"), named(output),
             alphabet_.index(target, "letter"));
}

GroupWord TransducerBuilder::named(std::initializer_list<std::string_view> names) const {
  return parse_names(states_, names);
}

TransducerBuilder& TransducerBuilder::default_identity() {
  for (Letter a = 0; a < alphabet_.size(); ++a)
    for (StateId s = 0; s < states_.size(); ++s)
      if (!cells_[slot(a, s)]) cells_[slot(a, s)] = Transition{GroupWord::generator(s), a};
  return *this;
}

Transducer TransducerBuilder::build() const {
  auto cells = cells_;
  for (StateId s : states_.identity_states())
    for (Letter a = 0; a < alphabet_.size(); ++a)
      if (!cells[slot(a, s)]) cells[slot(a, s)] = Transition{GroupWord{}, a};
  return Transducer(alphabet_, states_, kind_, std::move(cells));
}

Report validate(const Transducer& t) {
  Report r;
  const auto& A = t.alphabet();
  const auto& S = t.states();
  for (StateId s = 0; s < S.size(); ++s) {
    std::vector<int> hits(A.size(), 0);
    bool total = true;
    for (Letter a = 0; a < A.size(); ++a) {
      const auto& cell = t.entry(a, s);
      if (!cell) {
        r.problems.push_back("table not total: missing (" + A.name(a) + ", " + S.name(s) + ")");
        total = false;
        continue;
      }
      ++hits[cell->target];
      if (S.is_identity(s) && (!cell->output.empty() || cell->target != a))
        r.problems.push_back("identity state " + S.name(s) + " is not trivial at letter " + A.name(a));
      if (t.is_finite_state() && cell->output.size() > 1)
        r.problems.push_back("finite-state transducer has output of length " +
                             std::to_string(cell->output.size()) + " at (" + A.name(a) + ", " + S.name(s) + ")");
    }
    if (total) {
      for (Letter b = 0; b < A.size(); ++b)
        if (hits[b] != 1) {
          r.problems.push_back("letter map not a permutation for state " + S.name(s) + " (letter " + A.name(b) +
                               " hit " + std::to_string(hits[b]) + " times)");
          break;
        }
    }
  }
  return r;
}

}  // namespace fra
