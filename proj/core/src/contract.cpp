#include "fra/contract.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "fra/action.hpp"
#include "fra/error.hpp"
#include "fra/trace.hpp"

namespace fra {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::size_t kNucleusBudget = 200'000;

// Group elements up to equality in ⟨Φ⟩. Candidates are bucketed by their
// action on a fixed sample of words and confirmed with word_problem_fs.
class Elements {
 public:
  explicit Elements(const Transducer& t) : t_(t) {
    std::mt19937 rng(0x5eed);
    const std::size_t len = t.alphabet().size() > 64 ? 3 : 5;
    for (int i = 0; i < 12; ++i) {
      Word w(len);
      for (auto& a : w) a = static_cast<Letter>(rng() % t.alphabet().size());
      samples_.push_back(std::move(w));
    }
  }

  std::size_t size() const { return reps_.size(); }
  const GroupWord& rep(std::size_t id) const { return reps_[id]; }

  std::size_t find(const GroupWord& raw) {
    GroupWord w = t_.word(raw);
    if (auto it = syntactic_.find(w); it != syntactic_.end()) return it->second;
    const std::uint64_t key = print(w);
    if (auto it = buckets_.find(key); it != buckets_.end())
      for (std::size_t id : it->second)
        if (word_problem_fs(t_, w * reps_[id].inverse()).trivial) {
          if (w < reps_[id]) reps_[id] = w;
          syntactic_.emplace(std::move(w), id);
          return id;
        }
    return kNone;
  }

  std::size_t intern(const GroupWord& raw) {
    std::size_t id = find(raw);
    if (id != kNone) return id;
    GroupWord w = t_.word(raw);
    id = reps_.size();
    reps_.push_back(w);
    buckets_[print(w)].push_back(id);
    syntactic_.emplace(std::move(w), id);
    sections_.emplace_back();
    return id;
  }

  // Section ids at every letter; created on demand.
  const std::vector<std::size_t>& sections(std::size_t id) {
    if (sections_[id].empty()) {
      std::vector<std::size_t> out;
      const GroupWord w = reps_[id];
      for (Letter a = 0; a < t_.alphabet().size(); ++a) out.push_back(intern(trace_letter(t_, a, w).residual));
      sections_[id] = std::move(out);
    }
    return sections_[id];
  }

 private:
  std::uint64_t print(const GroupWord& w) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) { h = (h ^ v) * 1099511628211ull; };
    for (Letter a : letter_permutation(t_, w)) mix(a);
    for (const auto& s : samples_)
      for (Letter a : act_word(t_, w, s)) mix(a + 0x9e37);
    return h;
  }

  const Transducer& t_;
  std::vector<Word> samples_;
  std::vector<GroupWord> reps_;
  std::unordered_map<GroupWord, std::size_t, GroupWordHash> syntactic_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
  std::vector<std::vector<std::size_t>> sections_;
};

// Nodes lying on a cycle of the graph restricted to `nodes`, by Kosaraju.
std::set<std::size_t> cyclic_nodes(const std::vector<std::size_t>& nodes,
                                   const std::unordered_map<std::size_t, std::vector<std::size_t>>& succ) {
  std::unordered_map<std::size_t, std::vector<std::size_t>> pred;
  for (std::size_t v : nodes)
    for (std::size_t w : succ.at(v)) pred[w].push_back(v);

  std::vector<std::size_t> finish;
  std::unordered_map<std::size_t, bool> seen;
  for (std::size_t root : nodes) {
    if (seen[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& out = succ.at(v);
      if (i < out.size()) {
        std::size_t w = out[i++];
        if (!seen[w]) {
          seen[w] = true;
          stack.emplace_back(w, 0);
        }
      } else {
        finish.push_back(v);
        stack.pop_back();
      }
    }
  }

  std::set<std::size_t> cyclic;
  std::unordered_map<std::size_t, bool> done;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (done[*it]) continue;
    std::vector<std::size_t> component, stack{*it};
    done[*it] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (std::size_t w : pred[v])
        if (!done[w]) {
          done[w] = true;
          stack.push_back(w);
        }
    }
    bool loop = component.size() > 1;
    if (!loop) {
      const auto& out = succ.at(component[0]);
      loop = std::find(out.begin(), out.end(), component[0]) != out.end();
    }
    if (loop) cyclic.insert(component.begin(), component.end());
  }
  return cyclic;
}

bool counter_shape(const GroupWord& w, StateId x, StateId y) {
  if (w.empty() || w[0].inverse || w[0].state == x || w[0].state == y) return false;
  std::size_t i = 1;
  while (i < w.size() && w[i] == Factor{x, false}) ++i;
  while (i < w.size() && w[i] == Factor{y, false}) ++i;
  return i == w.size();
}

bool equal_in(const Transducer& t, const GroupWord& a, const GroupWord& b) {
  return word_problem_fs(t, a * b.inverse()).trivial;
}

bool conjugate_in(const Transducer& t, const GroupWord& w, const GroupWord& target, std::size_t max_len) {
  for (std::size_t k = 0; k < std::max<std::size_t>(w.size(), 1); ++k)
    if (equal_in(t, w.rotated(k), target)) return true;
  std::vector<Factor> gens;
  for (StateId s = 0; s < t.states().size(); ++s)
    if (!t.states().is_identity(s)) {
      gens.push_back({s, false});
      gens.push_back({s, true});
    }
  std::vector<GroupWord> layer{GroupWord{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<GroupWord> next;
    for (const auto& c : layer)
      for (const Factor& f : gens) {
        if (!c.empty() && c[c.size() - 1].cancels(f)) continue;
        GroupWord d = c * GroupWord{f};
        if (equal_in(t, conjugate(w, d), target)) return true;
        next.push_back(std::move(d));
      }
    layer = std::move(next);
  }
  return false;
}

std::string nucleus_state_name(const GroupWord& w, const StateSet& states) {
  if (w.empty()) return "nuc.1";
  std::string name = "nuc";
  for (const Factor& f : w.factors()) name += "." + states.name(f.state) + (f.inverse ? "~" : "");
  return name;
}

}  // namespace

AuxiliaryTransducers auxiliary_transducers(const StateSet& states) {
  const StateId x = states.index("x", "state"), y = states.index("y", "state");
  std::vector<StateId> s;
  for (StateId q = 0; q < states.size(); ++q)
    if (q != x && q != y && !states.is_identity(q)) s.push_back(q);

  Alphabet bits(std::vector<std::string>{"0", "1"});
  std::vector<Transducer> phis;
  for (StateId si : s) {
    TransducerBuilder b(bits, states, TransducerKind::finite_state);
    for (StateId q = 0; q < states.size(); ++q) {
      if (states.is_identity(q)) continue;
      for (Letter a = 0; a < 2; ++a)
        b.set(a, q, a == 0 ? GroupWord::generator(q) : GroupWord{}, q == si ? 1 - a : a);
    }
    phis.push_back(b.build());
  }

  Alphabet triples;
  for (int v = 0; v < 8; ++v)
    triples.add(std::string{char('0' + (v >> 2 & 1)), char('0' + (v >> 1 & 1)), char('0' + (v & 1))});
  TransducerBuilder b0(triples, states, TransducerKind::finite_state);
  for (StateId q = 0; q < states.size(); ++q) {
    if (states.is_identity(q)) continue;
    for (Letter v = 0; v < 8; ++v) {
      const unsigned a = v >> 2 & 1, bb = v >> 1 & 1, c = v & 1;
      if (q == x)
        b0.set(v, q, a == 0 ? GroupWord::generator(q) : GroupWord{}, v ^ 4);
      else if (q == y)
        b0.set(v, q, bb == 0 ? GroupWord::generator(q) : GroupWord{}, v ^ 2);
      else
        b0.set(v, q, c == 0 ? GroupWord::generator(q) : GroupWord{}, v ^ 1);
    }
  }
  return {b0.build(), std::move(phis), std::move(s)};
}

Transducer contractify(const Transducer& phi) {
  if (!phi.is_finite_state()) throw InvalidArgument("contractify needs a finite-state transducer");
  auto aux = auxiliary_transducers(phi.states());
  GroupWord xy = commutator(phi.word({"x"}), phi.word({"y"}));
  if (!word_problem_fs(phi, xy).trivial) throw InvalidArgument("contractify: x and y do not commute");

  std::optional<Transducer> tail;
  for (auto it = aux.phi.rbegin(); it != aux.phi.rend(); ++it) tail = tail ? compose(*it, *tail) : *it;
  Transducer inner = tail ? compose(aux.phi0, *tail) : aux.phi0;
  return compose(phi, inner);
}

PowerRelationReport check_power_relation(const Transducer& phi, const Transducer& contracted, unsigned max_t,
                                         unsigned max_exp, std::size_t conjugator_length) {
  PowerRelationReport report;
  const StateId x = phi.states().index("x", "state"), y = phi.states().index("y", "state");
  const std::size_t tails = contracted.alphabet().size() / phi.alphabet().size();
  if (tails * phi.alphabet().size() != contracted.alphabet().size())
    throw InvalidArgument("check_power_relation: alphabets do not match");

  for (StateId s = 0; s < phi.states().size(); ++s) {
    if (s == x || s == y || phi.states().is_identity(s)) continue;
    for (unsigned m = 0; m <= max_exp; ++m)
      for (unsigned n = 0; n <= max_exp; ++n) {
        GroupWord g = GroupWord::generator(s) * GroupWord::generator(x).power(m) * GroupWord::generator(y).power(n);
        for (unsigned t = 1; t <= max_t; ++t)
          for (Letter a = 0; a < phi.alphabet().size(); ++a) {
            auto base = trace_letter(phi, a, g.power(t));
            if (base.out_letter != a || !counter_shape(base.residual, x, y)) continue;
            ++report.checked;
            const GroupWord big = g.power(4 * static_cast<std::int64_t>(t));
            for (std::size_t j = 0; j < tails; ++j) {
              ++report.tails;
              const Letter in = static_cast<Letter>(a * tails + j);
              auto r = trace_letter(contracted, in, big);
              auto where = [&] {
                return to_string(g, phi.states()) + " ^ " + std::to_string(4 * t) + " at " +
                       contracted.alphabet().name(in);
              };
              if (r.out_letter != in) {
                report.failures.push_back(where() + ": letter moved");
              } else if (j == 0) {
                if (!equal_in(contracted, r.residual, base.residual))
                  report.failures.push_back(where() + ": residual " + to_string(r.residual, phi.states()) +
                                            " differs from " + to_string(base.residual, phi.states()));
              } else if (!word_problem_fs(contracted, r.residual).trivial &&
                         !conjugate_in(contracted, r.residual, base.residual, conjugator_length)) {
                report.failures.push_back(where() + ": residual " + to_string(r.residual, phi.states()) +
                                          " is neither trivial nor conjugate to " +
                                          to_string(base.residual, phi.states()));
              }
            }
          }
      }
  }
  return report;
}

NucleusReport nucleus(const Transducer& phi, std::size_t budget) {
  if (!phi.is_finite_state()) throw InvalidArgument("nucleus needs a finite-state transducer");
  Elements elements(phi);
  NucleusReport report;
  std::set<std::size_t> core;

  std::vector<std::size_t> seeds{elements.intern(GroupWord{})};
  for (StateId s = 0; s < phi.states().size(); ++s) {
    seeds.push_back(elements.intern(GroupWord::generator(s)));
    seeds.push_back(elements.intern(GroupWord::generator(s, true)));
  }

  for (;;) {
    // section closure of the seeds
    std::unordered_map<std::size_t, std::vector<std::size_t>> succ;
    std::vector<std::size_t> order, stack(seeds.begin(), seeds.end());
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      if (succ.contains(v)) continue;
      if (elements.size() > budget) {
        report.elements_seen = elements.size();
        for (std::size_t id : core) report.nucleus.push_back(elements.rep(id));
        std::sort(report.nucleus.begin(), report.nucleus.end());
        return report;
      }
      const auto& out = elements.sections(v);
      auto& mine = succ[v];
      mine = out;
      std::sort(mine.begin(), mine.end());
      mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
      order.push_back(v);
      for (std::size_t w : mine)
        if (!succ.contains(w)) stack.push_back(w);
    }

    auto cyclic = cyclic_nodes(order, succ);
    std::set<std::size_t> found;
    std::vector<std::size_t> todo(cyclic.begin(), cyclic.end());
    while (!todo.empty()) {
      std::size_t v = todo.back();
      todo.pop_back();
      if (!found.insert(v).second) continue;
      for (std::size_t w : succ.at(v)) todo.push_back(w);
    }

    const bool grew = !std::includes(core.begin(), core.end(), found.begin(), found.end());
    core.insert(found.begin(), found.end());
    if (!grew && report.closure_depth > 0) break;
    ++report.closure_depth;

    seeds.clear();
    for (std::size_t p : core)
      for (std::size_t q : core) seeds.push_back(elements.intern(elements.rep(p) * elements.rep(q)));
  }

  report.complete = true;
  report.elements_seen = elements.size();
  for (std::size_t id : core) report.nucleus.push_back(elements.rep(id));
  std::sort(report.nucleus.begin(), report.nucleus.end());
  return report;
}

NuclearCheck nuclear_check(const Transducer& phi) {
  if (!phi.is_finite_state()) throw InvalidArgument("nuclear_check needs a finite-state transducer");
  Elements elements(phi);
  std::set<std::size_t> states;
  for (StateId s = 0; s < phi.states().size(); ++s) states.insert(elements.intern(GroupWord::generator(s)));

  std::unordered_map<GroupWord, bool, GroupWordHash> memo;
  NuclearCheck out;
  for (Letter a = 0; a < phi.alphabet().size(); ++a)
    for (StateId s1 = 0; s1 < phi.states().size(); ++s1)
      for (StateId s2 = 0; s2 < phi.states().size(); ++s2) {
        GroupWord section =
            trace_letter(phi, a, GroupWord::generator(s1) * GroupWord::generator(s2)).residual;
        auto [it, fresh] = memo.try_emplace(section, false);
        if (fresh) {
          if (section.size() == 1 && !section[0].inverse)
            it->second = true;
          else
            it->second = states.contains(elements.find(section));
        }
        if (!it->second) {
          out = {false, a, s1, s2, section};
          return out;
        }
      }
  return out;
}

Nuclearized nuclearize(const Transducer& phi, std::size_t budget) {
  auto report = nucleus(phi, kNucleusBudget);
  if (!report.complete) throw Error("nuclearize: nucleus did not stabilize");

  Elements elements(phi);
  StateSet states = phi.states();
  std::vector<std::size_t> element_of;  // element id per state
  for (StateId s = 0; s < states.size(); ++s) element_of.push_back(elements.intern(GroupWord::generator(s)));

  // nucleus elements and inverted outputs become states, closed under sections
  std::vector<GroupWord> pending = report.nucleus;
  for (Letter a = 0; a < phi.alphabet().size(); ++a)
    for (StateId s = 0; s < phi.states().size(); ++s) {
      const GroupWord& out = phi.at(a, s).output;
      if (out.size() == 1 && out[0].inverse) pending.push_back(out);
    }
  std::vector<GroupWord> added;
  while (!pending.empty()) {
    GroupWord w = std::move(pending.back());
    pending.pop_back();
    std::size_t id = elements.intern(w);
    if (std::find(element_of.begin(), element_of.end(), id) != element_of.end()) continue;
    states.add(nucleus_state_name(w, phi.states()), w.empty());
    element_of.push_back(id);
    for (Letter a = 0; a < phi.alphabet().size(); ++a) pending.push_back(trace_letter(phi, a, w).residual);
    added.push_back(std::move(w));
  }

  auto state_for = [&](const GroupWord& w) -> GroupWord {
    std::size_t id = elements.intern(w);
    for (StateId s = 0; s < element_of.size(); ++s)
      if (element_of[s] == id) return states.is_identity(s) ? GroupWord{} : GroupWord::generator(s);
    throw Error("nuclearize: a section left the enlarged stateset");
  };

  TransducerBuilder b(phi.alphabet(), states, TransducerKind::finite_state);
  for (Letter a = 0; a < phi.alphabet().size(); ++a)
    for (StateId s = 0; s < phi.states().size(); ++s) {
      if (phi.states().is_identity(s)) continue;
      const Transition& tr = phi.at(a, s);
      b.set(a, s, tr.output.empty() ? GroupWord{} : state_for(tr.output), tr.target);
    }
  for (std::size_t k = 0; k < added.size(); ++k) {
    const StateId s = static_cast<StateId>(phi.states().size() + k);
    if (states.is_identity(s)) continue;
    for (Letter a = 0; a < phi.alphabet().size(); ++a) {
      auto r = trace_letter(phi, a, added[k]);
      b.set(a, s, state_for(r.residual), r.out_letter);
    }
  }
  Transducer widened = b.build();

  for (std::size_t n = 1; n <= std::max<std::size_t>(budget, 1); ++n) {
    Transducer candidate = n == 1 ? widened : expand_alphabet(widened, n);
    if (is_nuclear(candidate)) return {std::move(candidate), n, added.size()};
  }
  throw Error("nuclearize: no block length up to " + std::to_string(budget) + " makes the transducer nuclear");
}

std::optional<std::size_t> path_contraction_bound(const Transducer& phi, std::size_t n_max) {
  const std::size_t na = phi.alphabet().size();
  std::vector<Factor> factors;
  for (StateId s = 0; s < phi.states().size(); ++s)
    if (!phi.states().is_identity(s)) {
      factors.push_back({s, false});
      factors.push_back({s, true});
    }
  const std::size_t nf = factors.size();
  // step[a * nf + f]: letter reached, or kNone when the output is empty
  std::vector<std::size_t> step(na * nf, kNone);
  for (Letter a = 0; a < na; ++a)
    for (std::size_t f = 0; f < nf; ++f) {
      auto r = trace_letter(phi, a, GroupWord{factors[f]});
      if (!r.residual.empty()) step[a * nf + f] = r.out_letter;
    }

  // layer: set of (letter reached, last factor) after ε-free reduced paths
  std::vector<char> layer(na * nf, 0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<char> next(na * nf, 0);
    bool any = false;
    for (Letter a = 0; a < na; ++a)
      for (std::size_t g = 0; g < nf; ++g) {
        if (step[a * nf + g] == kNone) continue;
        bool reachable = n == 1;
        for (std::size_t f = 0; f < nf && !reachable; ++f)
          reachable = layer[a * nf + f] && !factors[f].cancels(factors[g]);
        if (!reachable) continue;
        next[step[a * nf + g] * nf + g] = 1;
        any = true;
      }
    if (!any) return n;
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace fra
