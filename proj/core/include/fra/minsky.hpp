#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fra/error.hpp"

namespace fra::minsky {

using StateIndex = std::uint32_t;

/// Instruction kinds, numbered as in the classical two-counter catalogue:
///   I    m+1            II   n+1            III  m+1, n+1
///   IV   m-1 (m > 0)    V    n-1 (n > 0)    VI   swap m, n
///   VII  m = 0 ? s' : s''                   VIII n = 0 ? s' : s''
///   IX   m = 0 ? s' : (s'', m-1)            X    n = 0 ? s' : (s'', n-1)
enum class Type : std::uint8_t { I = 1, II, III, IV, V, VI, VII, VIII, IX, X };

std::string to_string(Type t);
/// Parses "I".."X"; throws ParseError otherwise.
Type parse_type(std::string_view s);
constexpr bool is_branching(Type t) { return t >= Type::VII; }

struct Instruction {
  Type type = Type::I;
  StateIndex target = 0;         ///< s' (zero branch for VII..X)
  StateIndex target_nonzero = 0; ///< s'' for VII..X, unused otherwise

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

class MinskyMachine {
 public:
  MinskyMachine() = default;
  MinskyMachine(std::vector<std::string> states, StateIndex start, StateIndex final,
                std::vector<std::optional<Instruction>> program);

  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::string& name(StateIndex s) const { return states_.at(s); }
  StateIndex index(std::string_view name) const;
  StateIndex start() const noexcept { return start_; }
  StateIndex final_state() const noexcept { return final_; }
  const std::optional<Instruction>& instruction(StateIndex s) const { return program_.at(s); }
  std::size_t size() const noexcept { return states_.size(); }

  /// Instruction types used by non-final states.
  std::set<Type> types() const;

  friend bool operator==(const MinskyMachine&, const MinskyMachine&) = default;

 private:
  std::vector<std::string> states_;
  StateIndex start_ = 0;
  StateIndex final_ = 0;
  std::vector<std::optional<Instruction>> program_;
};

struct Config {
  StateIndex state = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 0;

  friend bool operator==(const Config&, const Config&) = default;
};

/// A type IV or V instruction fired with its counter at zero.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

/// step() was asked to move a halted machine.
class AlreadyHalted : public Error {
 public:
  using Error::Error;
};

Config step(const MinskyMachine& mm, const Config& c);

struct Halted {
  std::uint64_t steps = 0;
  Config config;
};
struct Running {
  Config config;
};
using RunResult = std::variant<Halted, Running>;

/// Runs at most `fuel` steps from c0.
RunResult run(const MinskyMachine& mm, const Config& c0, std::uint64_t fuel);
inline RunResult run(const MinskyMachine& mm, std::uint64_t fuel) { return run(mm, Config{mm.start(), 0, 0}, fuel); }

/// Instruction sets accepted by the three compilers.
enum class InstructionSet {
  wp,     ///< {I, VI, IX}
  order,  ///< {III, IV, V, VII, VIII}
  orbit,  ///< {III, IX, X}
};

std::set<Type> types_of(InstructionSet set);
std::string to_string(InstructionSet set);
InstructionSet parse_instruction_set(std::string_view s);
bool uses_only(const MinskyMachine& mm, InstructionSet set);

struct Normalized {
  MinskyMachine machine;
  /// Every source step is simulated by at most this many target steps.
  unsigned step_factor = 1;
};

/// Rewrites the machine into the target instruction set, preserving halting
/// from every configuration reachable from (start, 0, 0). A machine already
/// inside the set is returned unchanged.
Normalized normalize(const MinskyMachine& mm, InstructionSet target);

/// Structural problems (missing instructions, final state with an
/// instruction) plus guard violations seen in a bounded run from (start,0,0).
std::vector<std::string> check(const MinskyMachine& mm, std::uint64_t fuel = 10'000);

}  // namespace fra::minsky
