#include "fra/minsky.hpp"

#include <array>
#include <deque>
#include <map>
#include <unordered_set>

namespace fra::minsky {

namespace {

constexpr std::array<const char*, 10> kTypeNames{"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"};

// The instruction as seen with the two counters exchanged.
Type mirrored(Type t) {
  switch (t) {
    case Type::I: return Type::II;
    case Type::II: return Type::I;
    case Type::IV: return Type::V;
    case Type::V: return Type::IV;
    case Type::VII: return Type::VIII;
    case Type::VIII: return Type::VII;
    case Type::IX: return Type::X;
    case Type::X: return Type::IX;
    default: return t;
  }
}

class Rewriter {
 public:
  Rewriter(const MinskyMachine& src, InstructionSet target) : src_(src), target_(target), allowed_(types_of(target)) {
    for (const auto& n : src.states()) taken_.insert(n);
  }

  Normalized run() {
    final_ = add_state(src_.name(src_.final_state()));
    StateIndex start = ref(src_.start(), false);
    while (!work_.empty()) {
      auto [s, swapped] = work_.front();
      work_.pop_front();
      emit(s, swapped);
    }
    MinskyMachine out(names_, start, final_, program_);
    return {std::move(out), factor_};
  }

 private:
  struct Node {
    StateIndex source;
    bool swapped;
    auto operator<=>(const Node&) const = default;
  };

  StateIndex add_state(std::string name) {
    names_.push_back(std::move(name));
    program_.emplace_back();
    return static_cast<StateIndex>(names_.size() - 1);
  }

  std::string unique(const std::string& base) {
    std::string name = base;
    for (int k = 2; taken_.contains(name) && !(name == base && !used_.contains(name)); ++k)
      name = base + "." + std::to_string(k);
    taken_.insert(name);
    used_.insert(name);
    return name;
  }

  StateIndex ref(StateIndex s, bool swapped) {
    if (s == src_.final_state()) return final_;
    Node key{s, swapped};
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    const std::string& base = src_.name(s);
    StateIndex id = add_state(swapped ? unique(base + "~") : unique(base));
    index_.emplace(key, id);
    work_.push_back({s, swapped});
    return id;
  }

  StateIndex fresh(StateIndex owner) { return add_state(unique(names_[owner] + ".g")); }

  void set(StateIndex at, Type t, StateIndex zero, StateIndex nonzero) {
    program_[at] = Instruction{t, zero, nonzero};
  }

  // Straight-line sequence of ops starting in `at`, ending in `exit`.
  // Branching ops in a chain are only used where the tested counter is
  // known to be positive, so both branches go to the next state.
  void chain(StateIndex at, std::initializer_list<Type> ops, StateIndex exit) {
    factor_ = std::max<unsigned>(factor_, static_cast<unsigned>(ops.size()));
    StateIndex current = at;
    std::size_t i = 0;
    for (Type op : ops) {
      StateIndex next = ++i == ops.size() ? exit : fresh(at);
      set(current, op, next, next);
      current = next;
    }
  }

  // Branch at `at`, with extra chains on either side.
  void branch(StateIndex at, Type test, std::initializer_list<Type> zero_ops, StateIndex zero_exit,
              std::initializer_list<Type> nonzero_ops, StateIndex nonzero_exit) {
    StateIndex z = zero_ops.size() ? fresh(at) : zero_exit;
    StateIndex nz = nonzero_ops.size() ? fresh(at) : nonzero_exit;
    set(at, test, z, nz);
    if (zero_ops.size()) chain(z, zero_ops, zero_exit);
    if (nonzero_ops.size()) chain(nz, nonzero_ops, nonzero_exit);
    factor_ = std::max<unsigned>(factor_, 1 + static_cast<unsigned>(std::max(zero_ops.size(), nonzero_ops.size())));
  }

  void emit(StateIndex s, bool swapped) {
    const StateIndex at = index_.at({s, swapped});
    const Instruction ins = *src_.instruction(s);
    const Type t = swapped ? mirrored(ins.type) : ins.type;

    if (t == Type::VI && !allowed_.contains(Type::VI)) {
      // exchange the counters' roles in the finite control instead of their values
      StateIndex next = ref(ins.target, !swapped);
      if (target_ == InstructionSet::order)
        chain(at, {Type::III, Type::IV, Type::V}, next);
      else
        chain(at, {Type::III, Type::IX, Type::X}, next);
      return;
    }
    const StateIndex a = ref(ins.target, swapped);
    const StateIndex b = is_branching(t) ? ref(ins.target_nonzero, swapped) : a;
    if (allowed_.contains(t)) {
      set(at, t, a, b);
      return;
    }

    switch (target_) {
      case InstructionSet::wp:
        switch (t) {
          case Type::II: return chain(at, {Type::VI, Type::I, Type::VI}, a);
          case Type::III: return chain(at, {Type::I, Type::VI, Type::I, Type::VI}, a);
          case Type::IV: return chain(at, {Type::IX}, a);
          case Type::V: return chain(at, {Type::VI, Type::IX, Type::VI}, a);
          case Type::VII: return branch(at, Type::IX, {}, a, {Type::I}, b);
          case Type::VIII: {
            StateIndex q = fresh(at);
            chain(at, {Type::VI}, q);
            return branch(q, Type::IX, {Type::VI}, a, {Type::I, Type::VI}, b);
          }
          case Type::X: {
            StateIndex q = fresh(at);
            chain(at, {Type::VI}, q);
            return branch(q, Type::IX, {Type::VI}, a, {Type::VI}, b);
          }
          default: break;
        }
        break;
      case InstructionSet::order:
        switch (t) {
          case Type::I: return chain(at, {Type::III, Type::V}, a);
          case Type::II: return chain(at, {Type::III, Type::IV}, a);
          case Type::IX: return branch(at, Type::VII, {}, a, {Type::IV}, b);
          case Type::X: return branch(at, Type::VIII, {}, a, {Type::V}, b);
          default: break;
        }
        break;
      case InstructionSet::orbit:
        switch (t) {
          case Type::I: return chain(at, {Type::III, Type::X}, a);
          case Type::II: return chain(at, {Type::III, Type::IX}, a);
          case Type::IV: return chain(at, {Type::IX}, a);
          case Type::V: return chain(at, {Type::X}, a);
          case Type::VII: return branch(at, Type::IX, {}, a, {Type::III, Type::X}, b);
          case Type::VIII: return branch(at, Type::X, {}, a, {Type::III, Type::IX}, b);
          default: break;
        }
        break;
    }
    throw InvalidArgument("normalize: no gadget for type " + to_string(t));
  }

  const MinskyMachine& src_;
  InstructionSet target_;
  std::set<Type> allowed_;
  std::vector<std::string> names_;
  std::vector<std::optional<Instruction>> program_;
  std::map<Node, StateIndex> index_;
  std::deque<Node> work_;
  std::unordered_set<std::string> taken_, used_;
  StateIndex final_ = 0;
  unsigned factor_ = 1;
};

}  // namespace

std::string to_string(Type t) { return kTypeNames.at(static_cast<std::size_t>(t) - 1); }

Type parse_type(std::string_view s) {
  for (std::size_t i = 0; i < kTypeNames.size(); ++i)
    if (s == kTypeNames[i]) return static_cast<Type>(i + 1);
  throw ParseError("unknown instruction type '" + std::string(s) + "'", 0);
}

MinskyMachine::MinskyMachine(std::vector<std::string> states, StateIndex start, StateIndex final,
                             std::vector<std::optional<Instruction>> program)
    : states_(std::move(states)), start_(start), final_(final), program_(std::move(program)) {
  if (states_.empty()) throw InvalidArgument("machine needs at least one state");
  if (program_.size() != states_.size()) throw InvalidArgument("program size does not match stateset");
  if (start_ >= states_.size() || final_ >= states_.size()) throw InvalidArgument("start/final out of range");
  std::unordered_set<std::string> seen;
  for (const auto& n : states_)
    if (n.empty() || !seen.insert(n).second) throw InvalidArgument("duplicate or empty state name '" + n + "'");
  for (StateIndex s = 0; s < states_.size(); ++s) {
    const auto& ins = program_[s];
    if (s == final_) {
      if (ins) throw InvalidArgument("final state " + states_[s] + " must not carry an instruction");
      continue;
    }
    if (!ins) throw InvalidArgument("state " + states_[s] + " has no instruction");
    if (ins->target >= states_.size() || (is_branching(ins->type) && ins->target_nonzero >= states_.size()))
      throw InvalidArgument("state " + states_[s] + " jumps to an unknown state");
  }
}

StateIndex MinskyMachine::index(std::string_view name) const {
  for (StateIndex s = 0; s < states_.size(); ++s)
    if (states_[s] == name) return s;
  throw UnknownSymbol("unknown machine state '" + std::string(name) + "'");
}

std::set<Type> MinskyMachine::types() const {
  std::set<Type> out;
  for (const auto& ins : program_)
    if (ins) out.insert(ins->type);
  return out;
}

Config step(const MinskyMachine& mm, const Config& c) {
  if (c.state == mm.final_state()) throw AlreadyHalted("machine is in its final state");
  const Instruction& ins = *mm.instruction(c.state);
  Config next = c;
  next.state = ins.target;
  auto guard = [&](std::uint64_t counter, const char* which) {
    if (counter == 0)
      throw GuardViolation("type " + to_string(ins.type) + " at state " + mm.name(c.state) + " with " + which +
                           " = 0");
  };
  switch (ins.type) {
    case Type::I: ++next.m; break;
    case Type::II: ++next.n; break;
    case Type::III: ++next.m; ++next.n; break;
    case Type::IV: guard(c.m, "m"); --next.m; break;
    case Type::V: guard(c.n, "n"); --next.n; break;
    case Type::VI: std::swap(next.m, next.n); break;
    case Type::VII: next.state = c.m == 0 ? ins.target : ins.target_nonzero; break;
    case Type::VIII: next.state = c.n == 0 ? ins.target : ins.target_nonzero; break;
    case Type::IX:
      if (c.m > 0) {
        next.state = ins.target_nonzero;
        --next.m;
      }
      break;
    case Type::X:
      if (c.n > 0) {
        next.state = ins.target_nonzero;
        --next.n;
      }
      break;
  }
  return next;
}

RunResult run(const MinskyMachine& mm, const Config& c0, std::uint64_t fuel) {
  Config c = c0;
  for (std::uint64_t i = 0; i < fuel; ++i) {
    if (c.state == mm.final_state()) return Halted{i, c};
    c = step(mm, c);
  }
  if (c.state == mm.final_state()) return Halted{fuel, c};
  return Running{c};
}

std::set<Type> types_of(InstructionSet set) {
  switch (set) {
    case InstructionSet::wp: return {Type::I, Type::VI, Type::IX};
    case InstructionSet::order: return {Type::III, Type::IV, Type::V, Type::VII, Type::VIII};
    case InstructionSet::orbit: return {Type::III, Type::IX, Type::X};
  }
  return {};
}

std::string to_string(InstructionSet set) {
  switch (set) {
    case InstructionSet::wp: return "wp";
    case InstructionSet::order: return "order";
    case InstructionSet::orbit: return "orbit";
  }
  return "?";
}

InstructionSet parse_instruction_set(std::string_view s) {
  if (s == "wp" || s == "I,VI,IX") return InstructionSet::wp;
  if (s == "order" || s == "III,IV,V,VII,VIII") return InstructionSet::order;
  if (s == "orbit" || s == "III,IX,X") return InstructionSet::orbit;
  throw InvalidArgument("unsupported instruction set '" + std::string(s) + "'");
}

bool uses_only(const MinskyMachine& mm, InstructionSet set) {
  auto allowed = types_of(set);
  for (Type t : mm.types())
    if (!allowed.contains(t)) return false;
  return true;
}

Normalized normalize(const MinskyMachine& mm, InstructionSet target) {
  if (uses_only(mm, target)) return {mm, 1};
  return Rewriter(mm, target).run();
}

std::vector<std::string> check(const MinskyMachine& mm, std::uint64_t fuel) {
  std::vector<std::string> problems;
  try {
    (void)run(mm, fuel);
  } catch (const GuardViolation& e) {
    problems.emplace_back(std::string("guard violation: ") + e.what());
  }
  return problems;
}

}  // namespace fra::minsky
