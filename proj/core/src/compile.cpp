#include "fra/compile.hpp"

#include <map>

#include "fra/error.hpp"

namespace fra {

using minsky::InstructionSet;
using minsky::MinskyMachine;
using minsky::Type;

namespace {

void require(const MinskyMachine& mm, InstructionSet set, const char* who) {
  if (!minsky::uses_only(mm, set))
    throw InvalidArgument(std::string(who) + ": machine must use only " + minsky::to_string(set) +
                          " instructions; run normalize first");
}

void reserve(const MinskyMachine& mm, std::initializer_list<std::string_view> names) {
  for (auto n : names)
    for (const auto& s : mm.states())
      if (s == n) throw InvalidArgument("machine state name '" + s + "' is reserved");
}

// Letter-map bookkeeping shared by the three compilers: rows are written with
// state ids, output words are built from (state, inverse) lists.
class Table {
 public:
  Table(Alphabet a, StateSet s, TransducerKind kind) : b_(std::move(a), std::move(s), kind) {}

  StateId st(std::string_view name) const { return b_.states().index(name, "state"); }
  Letter le(std::string_view name) const { return b_.alphabet().index(name, "letter"); }

  void set(Letter a, StateId s, std::initializer_list<Factor> out, Letter to) {
    b_.set(a, s, GroupWord(std::span<const Factor>(out.begin(), out.size())), to);
  }
  void set(Letter a, StateId s, const GroupWord& out, Letter to) { b_.set(a, s, out, to); }
  void fill(Letter a, StateId s, const GroupWord& out, Letter to) {
    if (!b_.has(a, s)) b_.set(a, s, out, to);
  }
  TransducerBuilder& builder() { return b_; }

  Transducer finish() {
    Transducer t = b_.build();
    auto report = validate(t);
    if (!report.ok()) throw Error("internal: compiled transducer is malformed: " + report.problems.front());
    return t;
  }

 private:
  TransducerBuilder b_;
};

Factor pos(StateId s) { return Factor{s, false}; }
Factor neg(StateId s) { return Factor{s, true}; }

void finish_witnesses(Compilation& c, const MinskyMachine& mm) {
  const Transducer& t = c.transducer;
  c.start = t.states().index(mm.name(mm.start()), "state");
  c.witnesses.emplace_back("start", c.encode(c.start, 1, 1));
}

}  // namespace

std::string to_string(CompilationKind k) {
  switch (k) {
    case CompilationKind::wp: return "wp";
    case CompilationKind::order: return "order";
    case CompilationKind::orbit: return "orbit";
  }
  return "?";
}

const GroupWord& Compilation::witness(std::string_view name) const {
  for (const auto& [n, w] : witnesses)
    if (n == name) return w;
  throw UnknownSymbol("no witness named '" + std::string(name) + "'");
}

GroupWord Compilation::encode(StateId s, std::uint64_t mx, std::uint64_t ny) const {
  GroupWord w = transducer.word(GroupWord::generator(s));
  w *= transducer.word(GroupWord::generator(x)).power(static_cast<std::int64_t>(mx));
  w *= transducer.word(GroupWord::generator(y)).power(static_cast<std::int64_t>(ny));
  return w;
}

Compilation compile_wp(const MinskyMachine& mm) {
  require(mm, InstructionSet::wp, "compile_wp");
  reserve(mm, {"x", "y", "t", "u"});

  StateSet states;
  for (auto n : {"x", "y", "t", "u"}) states.add(n);
  for (const auto& n : mm.states()) states.add(n);
  for (minsky::StateIndex s = 0; s < mm.size(); ++s)
    if (mm.instruction(s) && mm.instruction(s)->type == Type::VI) {
      states.add("a." + mm.name(s));
      states.add("b." + mm.name(s));
    }

  Alphabet letters;
  for (auto n : {"0", "1", "d1", "d2"}) letters.add(n);
  for (minsky::StateIndex s = 0; s < mm.size(); ++s) {
    const auto& ins = mm.instruction(s);
    if (!ins) continue;
    int count = ins->type == Type::I ? 1 : ins->type == Type::IX ? 2 : 5;
    for (int k = 1; k <= count; ++k) letters.add(mm.name(s) + "." + std::to_string(k));
  }

  Table tab(letters, states, TransducerKind::asynchronous);
  const StateId x = tab.st("x"), y = tab.st("y"), t = tab.st("t"), u = tab.st("u");
  const Letter l0 = tab.le("0"), l1 = tab.le("1"), d1 = tab.le("d1"), d2 = tab.le("d2");
  const StateId halt = tab.st(mm.name(mm.final_state()));

  tab.set(l0, halt, {}, d1);
  tab.set(d1, halt, {}, l0);
  tab.set(d2, halt, {}, d2);
  tab.set(d1, x, {}, d1);
  tab.set(d1, y, {}, d1);
  tab.set(d2, x, {}, d2);
  tab.set(d2, y, {}, d2);
  tab.set(d1, t, {}, d2);
  tab.set(d2, t, {}, d1);
  tab.set(l0, u, {pos(u)}, l1);
  tab.set(l1, u, {pos(u)}, l0);

  for (minsky::StateIndex s = 0; s < mm.size(); ++s) {
    const auto& ins = mm.instruction(s);
    if (!ins) continue;
    const StateId si = tab.st(mm.name(s));
    const StateId sj = tab.st(mm.name(ins->target));
    auto L = [&](int k) { return tab.le(mm.name(s) + "." + std::to_string(k)); };
    switch (ins->type) {
      case Type::I:
        tab.set(l0, si, {pos(sj)}, L(1));
        tab.set(L(1), si, {}, l0);
        tab.set(L(1), x, {pos(x), pos(x)}, L(1));
        tab.set(L(1), y, {pos(y)}, L(1));
        break;
      case Type::VI: {
        const StateId a = tab.st("a." + mm.name(s)), b = tab.st("b." + mm.name(s));
        // x^(b x) and y^x, with x^g = g⁻¹ x g
        tab.set(L(1), x, {neg(x), neg(b), pos(x), pos(b), pos(x)}, L(1));
        tab.set(L(2), x, {}, L(3));
        tab.set(L(3), x, {pos(x)}, L(2));
        tab.set(L(4), x, {pos(x), pos(x)}, L(4));
        tab.set(L(5), x, {pos(y)}, L(5));
        tab.set(L(1), y, {neg(x), pos(y), pos(x)}, L(1));
        tab.set(L(2), y, {pos(y)}, L(2));
        tab.set(L(4), y, {pos(y)}, L(4));
        tab.set(L(5), y, {pos(x)}, L(5));
        tab.set(l0, si, {pos(a), pos(b), pos(x)}, L(1));
        tab.set(L(1), si, {}, l0);
        tab.set(l0, a, {pos(a)}, L(2));
        tab.set(L(2), a, {}, l0);
        tab.set(L(2), b, {pos(b)}, L(4));
        tab.set(L(3), b, {neg(a), pos(sj)}, L(5));
        tab.set(L(4), b, {}, L(2));
        tab.set(L(5), b, {}, L(3));
        break;
      }
      case Type::IX: {
        const StateId sk = tab.st(mm.name(ins->target_nonzero));
        tab.set(l0, si, {pos(sk)}, L(1));
        tab.set(L(1), x, {neg(sk), pos(sj), pos(x)}, L(2));
        tab.set(L(1), y, {pos(y)}, L(1));
        tab.set(L(1), si, {}, l0);
        tab.set(L(2), x, {neg(x), neg(sj), pos(sk), pos(x)}, L(1));
        tab.set(L(2), y, {pos(y)}, L(2));
        break;
      }
      default: break;
    }
  }

  for (StateId g = 0; g < states.size(); ++g)
    if (g != u) tab.fill(l1, g, {}, l1);
  for (Letter a = 0; a < letters.size(); ++a)
    if (a != l0 && a != l1) tab.fill(a, u, {}, a);
  tab.builder().default_identity();

  Compilation c{tab.finish(), {}, constant_ray(l0), CompilationKind::wp, 0, x, y};
  finish_witnesses(c, mm);
  const GroupWord& start = c.witnesses.front().second;
  GroupWord g = start * GroupWord::generator(t) * start.inverse();
  c.witnesses.emplace_back("g", g);
  c.witnesses.emplace_back("u", GroupWord::generator(u));
  c.witnesses.emplace_back("commutator", commutator(g, GroupWord::generator(u)));
  return c;
}

namespace {

// Letter names of the block used by one instruction type: suffix b marks
// the barred letters, which carry the inverse action.
std::vector<std::string> block_letters(Type type) {
  const int k = type == Type::VII || type == Type::VIII ? 4 : 2;
  std::vector<std::string> out;
  for (int bar = 0; bar < 2; ++bar)
    for (int i = 1; i <= k; ++i) out.push_back(minsky::to_string(type) + "." + std::to_string(i) + (bar ? "b" : ""));
  return out;
}

struct Cell {
  int letter;          // index inside the block
  int target;          // index inside the block
  int out;             // 0: empty, 1: x-ish, 2: s', 3: s''
  bool inverse = false;
};

// Rows of the type III, IV and VII blocks; type V and VIII swap x and y.
// Block order is 1, 2, (3, 4,) 1b, 2b, (3b, 4b).
struct BlockTable {
  std::vector<Cell> x, y, s;
};

BlockTable table_III() {
  return {
      {{0, 0, 1}, {1, 1, 1}, {2, 2, 1, true}, {3, 3, 1, true}},
      // the printed table has y at 2b going to 1b, which is not a permutation
      {{0, 0, 1}, {1, 1, 1}, {2, 2, 1, true}, {3, 3, 1, true}},
      {{0, 1, 2}, {1, 0, 0}, {2, 3, 0}, {3, 2, 2, true}},
  };
}

BlockTable table_IV() {
  return {
      {{0, 1, 1}, {1, 0, 0}, {2, 3, 0}, {3, 2, 1, true}},
      {{0, 0, 1}, {1, 1, 1}, {2, 2, 1, true}, {3, 3, 1, true}},
      {{0, 0, 2}, {1, 1, 2}, {2, 2, 2, true}, {3, 3, 2, true}},
  };
}

BlockTable table_VII() {
  return {
      {{0, 3, 1}, {1, 2, 0}, {2, 1, 0}, {3, 0, 1}, {4, 7, 1, true}, {5, 6, 0}, {6, 5, 0}, {7, 4, 1, true}},
      {{0, 0, 1}, {1, 1, 0}, {2, 2, 0}, {3, 3, 1}, {4, 4, 1, true}, {5, 5, 0}, {6, 6, 0}, {7, 7, 1, true}},
      {{0, 1, 0}, {1, 0, 3}, {2, 3, 2}, {3, 7, 0}, {4, 5, 3, true}, {5, 4, 0}, {6, 2, 0}, {7, 6, 2, true}},
  };
}

}  // namespace

Compilation compile_order(const MinskyMachine& mm) {
  require(mm, InstructionSet::order, "compile_order");
  reserve(mm, {"x", "y", "eps"});

  StateSet states;
  for (const auto& n : mm.states()) states.add(n);
  states.add("x");
  states.add("y");
  states.add("eps", true);

  const std::vector<Type> order_types{Type::III, Type::IV, Type::V, Type::VII, Type::VIII};
  const auto used = mm.types();
  Alphabet letters;
  std::map<Type, std::vector<Letter>> block;
  for (Type ty : order_types) {
    if (!used.contains(ty)) continue;
    for (const auto& n : block_letters(ty)) block[ty].push_back(letters.add(n));
  }

  Table tab(letters, states, TransducerKind::finite_state);
  const StateId x = tab.st("x"), y = tab.st("y");

  for (const auto& [ty, ls] : block) {
    const Type base = ty == Type::V ? Type::IV : ty == Type::VIII ? Type::VII : ty;
    const bool swap_xy = ty != base;
    const BlockTable bt = base == Type::III ? table_III() : base == Type::IV ? table_IV() : table_VII();
    const std::size_t half = ls.size() / 2;

    auto write = [&](const std::vector<Cell>& cells, StateId st, StateId s1, StateId s2) {
      for (const Cell& c : cells) {
        GroupWord out;
        if (c.out == 1) out = GroupWord::generator(st, c.inverse);
        if (c.out == 2) out = GroupWord::generator(s1, c.inverse);
        if (c.out == 3) out = GroupWord::generator(s2, c.inverse);
        tab.set(ls[c.letter], st, out, ls[c.target]);
      }
    };
    write(bt.x, swap_xy ? y : x, 0, 0);
    write(bt.y, swap_xy ? x : y, 0, 0);

    for (minsky::StateIndex s = 0; s < mm.size(); ++s) {
      const StateId sid = tab.st(mm.name(s));
      const auto& ins = mm.instruction(s);
      if (ins && ins->type == ty) {
        write(bt.s, sid, tab.st(mm.name(ins->target)),
              minsky::is_branching(ty) ? tab.st(mm.name(ins->target_nonzero)) : 0);
      } else {
        // other instructions and the halting state swap the two halves
        for (std::size_t i = 0; i < ls.size(); ++i) tab.set(ls[i], sid, GroupWord{}, ls[(i + half) % ls.size()]);
      }
    }
  }

  Compilation c{tab.finish(), {}, constant_ray(0), CompilationKind::order, 0, x, y};
  finish_witnesses(c, mm);
  return c;
}

Compilation compile_orbit(const MinskyMachine& mm) {
  require(mm, InstructionSet::orbit, "compile_orbit");
  reserve(mm, {"x", "y", "eps"});

  StateSet states;
  for (const auto& n : mm.states()) states.add(n);
  states.add("x");
  states.add("y");
  states.add("eps", true);

  const auto used = mm.types();
  Alphabet letters;
  const Letter zero = letters.add("0");
  std::map<Type, std::vector<Letter>> block;
  for (Type ty : {Type::III, Type::IX, Type::X}) {
    if (!used.contains(ty)) continue;
    const int k = ty == Type::III ? 2 : 4;
    for (int i = 1; i <= k; ++i) block[ty].push_back(letters.add(minsky::to_string(ty) + "." + std::to_string(i)));
  }

  Table tab(letters, states, TransducerKind::finite_state);
  const StateId x = tab.st("x"), y = tab.st("y");
  tab.set(zero, x, {}, zero);
  tab.set(zero, y, {}, zero);
  if (block.contains(Type::III)) {
    const auto& L = block[Type::III];
    for (StateId g : {x, y})
      for (Letter l : L) tab.set(l, g, {pos(g)}, l);
  }
  for (Type ty : {Type::IX, Type::X}) {
    if (!block.contains(ty)) continue;
    const auto& L = block[ty];
    const StateId dec = ty == Type::IX ? x : y;
    const StateId other = ty == Type::IX ? y : x;
    tab.set(L[0], dec, {}, L[1]);
    tab.set(L[1], dec, {}, L[0]);
    tab.set(L[2], dec, {pos(dec)}, L[3]);
    tab.set(L[3], dec, {}, L[2]);
    tab.set(L[0], other, {}, L[0]);
    tab.set(L[1], other, {}, L[1]);
    tab.set(L[2], other, {pos(other)}, L[2]);
    tab.set(L[3], other, {pos(other)}, L[3]);
  }

  for (minsky::StateIndex s = 0; s < mm.size(); ++s) {
    const StateId sid = tab.st(mm.name(s));
    const auto& ins = mm.instruction(s);
    if (!ins) {
      for (Letter a = 0; a < letters.size(); ++a) tab.set(a, sid, {}, a);
      continue;
    }
    const StateId s1 = tab.st(mm.name(ins->target));
    if (ins->type == Type::III) {
      const auto& L = block[Type::III];
      tab.set(zero, sid, {pos(s1)}, L[0]);
      tab.set(L[0], sid, {}, L[1]);
      tab.set(L[1], sid, {}, zero);
    } else {
      const auto& L = block[ins->type];
      const StateId s2 = tab.st(mm.name(ins->target_nonzero));
      tab.set(zero, sid, {}, L[0]);
      tab.set(L[0], sid, {pos(s2)}, L[3]);
      tab.set(L[1], sid, {pos(s1)}, L[2]);
      tab.set(L[2], sid, {pos(s1)}, L[1]);
      tab.set(L[3], sid, {}, zero);
    }
    // blocks of the other types are crossed unchanged
    for (const auto& [ty, L] : block)
      if (ty != ins->type)
        for (Letter l : L) tab.set(l, sid, {pos(sid)}, l);
  }
  Compilation c{tab.finish(), {}, constant_ray(zero), CompilationKind::orbit, 0, x, y};
  finish_witnesses(c, mm);
  return c;
}

GroupWord make_uniform_witness(const Compilation& comp, unsigned n) {
  if (comp.kind != CompilationKind::wp) throw InvalidArgument("uniform witnesses need a compile_wp result");
  if (n > 24) throw InvalidArgument("uniform witness exponent too large");
  const StateId t = comp.transducer.states().index("t", "state");
  const StateId u = comp.transducer.states().index("u", "state");
  GroupWord start = comp.encode(comp.start, 1, std::uint64_t{1} << n);
  GroupWord g = start * GroupWord::generator(t) * start.inverse();
  return commutator(g, GroupWord::generator(u));
}

}  // namespace fra
