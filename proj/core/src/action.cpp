#include "fra/action.hpp"

#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "fra/error.hpp"

namespace fra {

namespace {

constexpr std::size_t kUnboundedDepth = static_cast<std::size_t>(-1);
constexpr std::size_t kMaxSections = 20'000'000;

struct SectionSearch {
  std::optional<No> moved;
  std::vector<GroupWord> sections;  // discovery order
  bool closed = false;
  std::size_t expanded = 0;
};

// Breadth-first walk over (prefix, section) pairs whose prefix is fixed by g.
// Sections are deduplicated as reduced words, so the first moved word found
// is the shortest one and, among those, the least in letter order.
SectionSearch explore_sections(const Transducer& t, const GroupWord& g, std::size_t max_depth) {
  SectionSearch out;
  std::unordered_set<GroupWord, GroupWordHash> seen;
  std::deque<std::pair<Word, GroupWord>> queue;
  seen.insert(g);
  out.sections.push_back(g);
  queue.emplace_back(Word{}, g);
  bool truncated = false;

  while (!queue.empty()) {
    auto [prefix, section] = std::move(queue.front());
    queue.pop_front();
    if (section.empty()) continue;
    if (prefix.size() >= max_depth) {
      truncated = true;
      continue;
    }
    ++out.expanded;
    for (Letter a = 0; a < t.alphabet().size(); ++a) {
      auto r = trace_letter(t, a, section);
      if (r.out_letter != a) {
        Word w = prefix;
        w.push_back(a);
        out.moved = No{w, act_word(t, g, w)};
        return out;
      }
      if (seen.insert(r.residual).second) {
        if (seen.size() > kMaxSections) throw Error("section closure exceeded internal limit");
        out.sections.push_back(r.residual);
        Word child = prefix;
        child.push_back(a);
        queue.emplace_back(std::move(child), std::move(r.residual));
      }
    }
  }
  out.closed = !truncated;
  return out;
}

struct PhaseKey {
  GroupWord section;
  std::size_t phase;
  friend bool operator==(const PhaseKey&, const PhaseKey&) = default;
};

struct PhaseKeyHash {
  std::size_t operator()(const PhaseKey& k) const noexcept { return k.section.hash() * 31 + k.phase; }
};

}  // namespace

Ray canonical(Ray r) {
  if (r.period.empty()) throw InvalidArgument("ray period must be nonempty");
  const std::size_t n = r.period.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = r.period[i] == r.period[i - d];
    if (ok) {
      r.period.resize(d);
      break;
    }
  }
  while (!r.preperiod.empty() && r.preperiod.back() == r.period.back()) {
    r.preperiod.pop_back();
    Letter last = r.period.back();
    r.period.pop_back();
    r.period.insert(r.period.begin(), last);
  }
  return r;
}

Letter ray_letter(const Ray& r, std::size_t i) {
  if (i < r.preperiod.size()) return r.preperiod[i];
  return r.period[(i - r.preperiod.size()) % r.period.size()];
}

Word ray_prefix(const Ray& r, std::size_t n) {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = ray_letter(r, i);
  return w;
}

Ray act_ray(const Transducer& t, const GroupWord& g, const Ray& ray) {
  if (!t.is_finite_state()) throw InvalidArgument("act_ray needs a finite-state transducer; use is_fixed_ray");
  if (ray.period.empty()) throw InvalidArgument("ray period must be nonempty");
  std::unordered_map<PhaseKey, std::size_t, PhaseKeyHash> seen;
  Word out;
  GroupWord section = g;
  for (std::size_t i = 0;; ++i) {
    if (i >= ray.preperiod.size()) {
      PhaseKey key{section, (i - ray.preperiod.size()) % ray.period.size()};
      auto [it, inserted] = seen.emplace(std::move(key), i);
      if (!inserted) {
        const auto p = static_cast<std::ptrdiff_t>(it->second);
        return canonical(Ray{Word(out.begin(), out.begin() + p), Word(out.begin() + p, out.end())});
      }
    }
    auto r = trace_letter(t, ray_letter(ray, i), section);
    out.push_back(r.out_letter);
    section = std::move(r.residual);
  }
}

WordProblemResult word_problem_fs(const Transducer& t, const GroupWord& g) {
  if (!t.is_finite_state()) throw InvalidArgument("word_problem_fs needs a finite-state transducer");
  auto search = explore_sections(t, t.word(g), kUnboundedDepth);
  WordProblemResult out;
  if (search.moved) {
    out.witness = std::move(search.moved->witness);
    out.image = std::move(search.moved->image);
    return out;
  }
  out.trivial = true;
  out.certificate.sections = std::move(search.sections);
  return out;
}

Verdict3 word_problem_bounded(const Transducer& t, const GroupWord& g, std::size_t depth) {
  auto search = explore_sections(t, t.word(g), depth);
  if (search.moved) return std::move(*search.moved);
  if (search.closed) return Yes{ClosureCertificate{std::move(search.sections)}};
  return Unknown{search.expanded};
}

Verdict3 is_fixed_ray(const Transducer& t, const GroupWord& g, const Ray& ray, std::size_t budget) {
  if (ray.period.empty()) throw InvalidArgument("ray period must be nonempty");
  std::unordered_map<PhaseKey, std::size_t, PhaseKeyHash> seen;
  GroupWord section = t.word(g);
  for (std::size_t i = 0; i < budget; ++i) {
    if (i >= ray.preperiod.size()) {
      PhaseKey key{section, (i - ray.preperiod.size()) % ray.period.size()};
      auto [it, inserted] = seen.emplace(key, i);
      if (!inserted) return Yes{RecurrenceCertificate{it->second, i, std::move(key.section)}};
    }
    const Letter in = ray_letter(ray, i);
    auto r = trace_letter(t, in, section);
    if (r.out_letter != in) {
      Word prefix = ray_prefix(ray, i + 1);
      return No{prefix, act_word(t, g, prefix)};
    }
    section = std::move(r.residual);
  }
  return Unknown{budget};
}

bool verify_closure(const Transducer& t, const GroupWord& g, const ClosureCertificate& c) {
  std::unordered_set<GroupWord, GroupWordHash> members(c.sections.begin(), c.sections.end());
  if (!members.contains(t.word(g))) return false;
  for (const auto& h : c.sections)
    for (Letter a = 0; a < t.alphabet().size(); ++a) {
      auto r = trace_letter(t, a, h);
      if (r.out_letter != a || !members.contains(r.residual)) return false;
    }
  return true;
}

bool verify_recurrence(const Transducer& t, const GroupWord& g, const Ray& r, const RecurrenceCertificate& c) {
  if (c.first < r.preperiod.size() || c.second <= c.first) return false;
  if ((c.second - c.first) % r.period.size() != 0) return false;
  GroupWord section = t.word(g);
  std::optional<GroupWord> at_first;
  for (std::size_t i = 0; i < c.second; ++i) {
    if (i == c.first) at_first = section;
    const Letter in = ray_letter(r, i);
    auto step = trace_letter(t, in, section);
    if (step.out_letter != in) return false;
    section = std::move(step.residual);
  }
  return at_first && *at_first == section && section == c.section;
}

bool verify_moved(const Transducer& t, const GroupWord& g, const No& n) {
  auto image = act_word(t, g, n.witness);
  return image == n.image && image != n.witness;
}

bool verify_word_verdict(const Transducer& t, const GroupWord& g, const Verdict3& v) {
  if (const auto* y = std::get_if<Yes>(&v)) {
    const auto* c = std::get_if<ClosureCertificate>(&y->certificate);
    return c && verify_closure(t, g, *c);
  }
  if (const auto* n = std::get_if<No>(&v)) return verify_moved(t, g, *n);
  return true;
}

bool verify_ray_verdict(const Transducer& t, const GroupWord& g, const Ray& r, const Verdict3& v) {
  if (const auto* y = std::get_if<Yes>(&v)) {
    const auto* c = std::get_if<RecurrenceCertificate>(&y->certificate);
    return c && verify_recurrence(t, g, r, *c);
  }
  if (const auto* n = std::get_if<No>(&v)) {
    return verify_moved(t, g, *n) && n->witness == ray_prefix(r, n->witness.size());
  }
  return true;
}

}  // namespace fra
