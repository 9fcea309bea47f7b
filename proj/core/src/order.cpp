#include "fra/order.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "fra/action.hpp"
#include "fra/error.hpp"
#include "fra/trace.hpp"

namespace fra {

namespace {

constexpr std::size_t kMaxConfirmationLength = 200'000;

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

std::optional<std::uint64_t> checked_lcm(std::uint64_t a, std::uint64_t b) {
  return checked_mul(a / std::gcd(a, b), b);
}

GroupWord cyclically_reduced(const GroupWord& w) {
  auto f = w.factors();
  std::size_t lo = 0, hi = f.size();
  while (hi - lo >= 2 && f[lo].cancels(f[hi - 1])) {
    ++lo;
    --hi;
  }
  return GroupWord(f.subspan(lo, hi - lo));
}

// Turns section words into graph node keys.
class Normalizer {
 public:
  Normalizer(const Transducer& t, GraphMode mode, const OrderOptions& options) : t_(t), mode_(mode) {
    trivial_.assign(t.states().size(), false);
    if (options.erase_trivial_generators && t.is_finite_state()) {
      for (StateId s = 0; s < t.states().size(); ++s)
        trivial_[s] = t.states().is_identity(s) || word_problem_fs(t, GroupWord::generator(s)).trivial;
    }
  }

  GroupWord key(const GroupWord& w) const {
    GroupWord erased;
    for (const auto& f : w.factors())
      if (!trivial_[f.state] && !t_.states().is_identity(f.state)) erased.push_back(f);
    if (mode_ == GraphMode::element) return erased;
    return symmetric_class_key(erased);
  }

 private:
  const Transducer& t_;
  GraphMode mode_;
  std::vector<bool> trivial_;
};

// Orbit of `a` under g and the section of g^(orbit length) at a.
std::pair<std::uint64_t, GroupWord> orbit_section(const Transducer& t, const GroupWord& g, Letter a) {
  GroupWord section;
  Letter current = a;
  std::uint64_t length = 0;
  do {
    auto r = trace_letter(t, current, g);
    section *= r.residual;
    current = r.out_letter;
    ++length;
  } while (current != a);
  return {length, section};
}

// Conjugacy by a short conjugator, checked with word_problem_fs.
bool short_conjugate(const Transducer& t, const GroupWord& a, const GroupWord& b, std::size_t max_len) {
  std::vector<Factor> gens;
  for (StateId s = 0; s < t.states().size(); ++s)
    if (!t.states().is_identity(s)) {
      gens.push_back({s, false});
      gens.push_back({s, true});
    }
  std::vector<GroupWord> layer{GroupWord{}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const auto& c : layer) {
      for (const auto& target : {b, b.inverse()})
        if (word_problem_fs(t, conjugate(a, c) * target.inverse()).trivial) return true;
    }
    if (len == max_len) break;
    std::vector<GroupWord> next;
    for (const auto& c : layer)
      for (const auto& f : gens) {
        GroupWord d = c;
        d.push_back(f);
        if (d.size() == len + 1) next.push_back(std::move(d));
      }
    layer = std::move(next);
  }
  return false;
}

// Strongly connected components (Tarjan); returns component id per node.
std::vector<std::size_t> components(std::size_t n, const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, ncomp = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);
  return comp;
}

struct IndexedEdge {
  std::size_t from, to;
  std::uint64_t label;
  Letter representative;
};

std::optional<InfiniteCertified> find_growing_cycle(const ClassGraph& graph, const std::vector<IndexedEdge>& edges) {
  const std::size_t n = graph.nodes.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  auto comp = components(n, adj);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.label <= 1 || comp[e.from] != comp[e.to]) continue;
    // path e.to ~> e.from inside the component
    std::vector<std::size_t> via(n, SIZE_MAX);
    std::vector<bool> reached(n, false);
    std::deque<std::size_t> queue{e.to};
    reached[e.to] = true;
    while (!queue.empty() && !reached[e.from]) {
      auto v = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < edges.size(); ++j) {
        const auto& f = edges[j];
        if (f.from != v || reached[f.to] || comp[f.to] != comp[e.from]) continue;
        reached[f.to] = true;
        via[f.to] = j;
        queue.push_back(f.to);
      }
    }
    std::vector<std::size_t> path;
    for (std::size_t v = e.from; v != e.to; v = edges[via[v]].from) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    InfiniteCertified cert;
    cert.cycle.push_back(graph.edges[i]);
    for (auto j : path) cert.cycle.push_back(graph.edges[j]);
    return cert;
  }
  return std::nullopt;
}

bool edge_matches(const Transducer& t, const Normalizer& norm, GraphMode mode, const ClassEdge& e) {
  if (mode == GraphMode::element) {
    auto [len, section] = orbit_section(t, e.from, e.representative);
    return len == e.label && norm.key(section) == e.to;
  }
  auto cd = cycle_decomposition(t, e.from);
  return std::any_of(cd.cycles.begin(), cd.cycles.end(), [&](const Cycle& c) {
    return c.letters.front() == e.representative && c.letters.size() == e.label && norm.key(c.section) == e.to;
  });
}

}  // namespace

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

CycleDecomposition cycle_decomposition(const Transducer& t, const GroupWord& g) {
  const GroupWord w = t.word(g);
  auto perm = letter_permutation(t, w);
  std::vector<bool> visited(perm.size(), false);
  CycleDecomposition out;
  for (Letter a = 0; a < perm.size(); ++a) {
    if (visited[a]) continue;
    Cycle c;
    for (Letter b = a; !visited[b]; b = perm[b]) {
      visited[b] = true;
      c.letters.push_back(b);
    }
    c.section = orbit_section(t, w, a).second;
    out.cycles.push_back(std::move(c));
  }
  return out;
}

GroupWord symmetric_class_key(const GroupWord& w) {
  GroupWord base = cyclically_reduced(w);
  if (base.empty()) return base;
  GroupWord best = base;
  for (const auto& v : {base, base.inverse()})
    for (std::size_t k = 0; k < v.size(); ++k) {
      GroupWord r = v.rotated(k);
      if (r < best) best = std::move(r);
    }
  return best;
}

std::string describe(const OrderResult& r) {
  if (const auto* f = std::get_if<Finite>(&r.value)) return "Finite(" + std::to_string(f->n) + ")";
  if (is_infinite(r)) return "InfiniteCertified";
  return "Unknown";
}

OrderResult order(const Transducer& t, const GroupWord& g, const OrderOptions& options) {
  if (!t.is_finite_state()) throw InvalidArgument("order needs a finite-state transducer");
  const GroupWord element = t.word(g);
  Normalizer norm(t, GraphMode::symmetric_conjugacy, options);

  OrderResult result;
  auto& graph = result.graph;
  graph.mode = GraphMode::symmetric_conjugacy;
  std::unordered_map<GroupWord, std::size_t, GroupWordHash> index;
  std::vector<IndexedEdge> edges;
  std::deque<std::size_t> frontier;

  auto intern = [&](const GroupWord& key) {
    if (auto it = index.find(key); it != index.end()) return it->second;
    if (options.conjugator_length > 0) {
      for (std::size_t i = 0; i < graph.nodes.size(); ++i)
        if (graph.nodes[i].size() == key.size() && short_conjugate(t, key, graph.nodes[i], options.conjugator_length)) {
          index.emplace(key, i);
          return i;
        }
    }
    std::size_t id = graph.nodes.size();
    graph.nodes.push_back(key);
    index.emplace(key, id);
    frontier.push_back(id);
    return id;
  };

  intern(norm.key(element));
  std::size_t expanded = 0;
  while (!frontier.empty() && expanded < options.budget) {
    std::size_t v = frontier.front();
    frontier.pop_front();
    ++expanded;
    const GroupWord node = graph.nodes[v];
    for (auto& c : cycle_decomposition(t, node).cycles) {
      std::size_t w = intern(norm.key(c.section));
      edges.push_back({v, w, c.letters.size(), c.letters.front()});
      graph.edges.push_back({node, graph.nodes[w], c.letters.size(), c.letters.front()});
    }
  }
  const bool closed = frontier.empty();

  if (auto cert = find_growing_cycle(graph, edges)) {
    result.value = std::move(*cert);
    return result;
  }
  if (!closed) {
    result.value = UnknownOrder{expanded, "budget exhausted"};
    return result;
  }

  // lcm over paths of label products; every cycle has product 1 here
  std::vector<std::uint64_t> lcm_from(graph.nodes.size(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : edges) {
      auto through = checked_mul(e.label, lcm_from[e.to]);
      auto merged = through ? checked_lcm(lcm_from[e.from], *through) : std::nullopt;
      if (!merged) {
        result.value = UnknownOrder{expanded, "order overflows 64 bits"};
        return result;
      }
      if (*merged != lcm_from[e.from]) {
        lcm_from[e.from] = *merged;
        changed = true;
      }
    }
  }

  const std::uint64_t n = lcm_from[0];
  if (n * element.size() > kMaxConfirmationLength) {
    result.value = UnknownOrder{expanded, "candidate order " + std::to_string(n) + " too large to confirm"};
    return result;
  }
  bool confirmed = word_problem_fs(t, element.power(static_cast<std::int64_t>(n))).trivial;
  for (auto p : prime_factors(n))
    confirmed = confirmed && !word_problem_fs(t, element.power(static_cast<std::int64_t>(n / p))).trivial;
  if (!confirmed) {
    result.value = UnknownOrder{expanded, "candidate order " + std::to_string(n) + " failed confirmation"};
    return result;
  }
  result.value = Finite{n};
  return result;
}

OrderResult orbit_size_ray(const Transducer& t, const GroupWord& g, Letter a, const OrderOptions& options) {
  if (!t.is_finite_state()) throw InvalidArgument("orbit_size_ray needs a finite-state transducer");
  if (a >= t.alphabet().size()) throw UnknownSymbol("letter index out of range");
  const GroupWord element = t.word(g);
  Normalizer norm(t, GraphMode::element, options);

  OrderResult result;
  auto& graph = result.graph;
  graph.mode = GraphMode::element;
  std::unordered_map<GroupWord, std::size_t, GroupWordHash> position;

  GroupWord node = norm.key(element);
  std::size_t steps = 0;
  for (;; ++steps) {
    if (auto it = position.find(node); it != position.end()) {
      const std::size_t loop_start = it->second;
      std::uint64_t loop_product = 1, before = 1;
      bool overflow = false;
      for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        auto& target = i < loop_start ? before : loop_product;
        auto m = checked_mul(target, graph.edges[i].label);
        if (!m) overflow = true;
        else target = *m;
      }
      if (loop_product > 1 || (overflow && loop_product != 1)) {
        InfiniteCertified cert;
        cert.cycle.assign(graph.edges.begin() + static_cast<std::ptrdiff_t>(loop_start), graph.edges.end());
        result.value = std::move(cert);
        return result;
      }
      if (overflow) {
        result.value = UnknownOrder{steps, "orbit size overflows 64 bits"};
        return result;
      }
      const std::uint64_t n = before;
      if (n * std::max<std::size_t>(element.size(), 1) > kMaxConfirmationLength) {
        result.value = UnknownOrder{steps, "candidate size " + std::to_string(n) + " too large to confirm"};
        return result;
      }
      const Ray fixed = constant_ray(a);
      bool confirmed = act_ray(t, element.power(static_cast<std::int64_t>(n)), fixed) == fixed;
      for (auto p : prime_factors(n))
        confirmed = confirmed && act_ray(t, element.power(static_cast<std::int64_t>(n / p)), fixed) != fixed;
      if (!confirmed) {
        result.value = UnknownOrder{steps, "candidate size " + std::to_string(n) + " failed confirmation"};
        return result;
      }
      result.value = Finite{n};
      return result;
    }
    if (steps >= options.budget) break;
    position.emplace(node, graph.nodes.size());
    graph.nodes.push_back(node);
    auto [label, section] = orbit_section(t, node, a);
    GroupWord next = norm.key(section);
    graph.edges.push_back({node, next, label, a});
    node = std::move(next);
  }
  result.value = UnknownOrder{steps, "budget exhausted"};
  return result;
}

bool verify_infinite_certificate(const Transducer& t, const InfiniteCertified& c, GraphMode mode,
                                 const OrderOptions& options) {
  if (c.cycle.empty()) return false;
  Normalizer norm(t, mode, options);
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < c.cycle.size(); ++i) {
    const auto& e = c.cycle[i];
    if (!(e.to == c.cycle[(i + 1) % c.cycle.size()].from)) return false;
    if (!edge_matches(t, norm, mode, e)) return false;
    product = checked_mul(product, e.label).value_or(2);
  }
  return product > 1;
}

bool verify_graph(const Transducer& t, const ClassGraph& g, const OrderOptions& options) {
  Normalizer norm(t, g.mode, options);
  return std::all_of(g.edges.begin(), g.edges.end(),
                     [&](const ClassEdge& e) { return edge_matches(t, norm, g.mode, e); });
}

std::string serialize_certificate(const ClassGraph& graph, const StateSet& states) {
  std::ostringstream os;
  os << "mode: " << (graph.mode == GraphMode::element ? "element" : "symmetric_conjugacy") << '\n';
  for (const auto& e : graph.edges)
    os << to_string(e.from, states) << " -> " << to_string(e.to, states) << " [" << e.label << "]\n";
  return os.str();
}

}  // namespace fra
