#pragma once

// Naive evaluators used as independent oracles. They read the transition
// table directly and never call into the library's trace or action code.

#include <functional>
#include <string>
#include <vector>

#include "fra/group_word.hpp"
#include "fra/transducer.hpp"

namespace oracle {

using fra::GroupWord;
using fra::Letter;
using fra::Transducer;
using fra::Word;

inline Word act(const Transducer& t, const GroupWord& g, const Word& w);

// w^(s) or w^(s^-1), one generator
inline Word act_generator(const Transducer& t, fra::Factor f, const Word& w) {
  if (w.empty() || t.states().is_identity(f.state)) return w;
  const Word rest(w.begin() + 1, w.end());
  if (!f.inverse) {
    const auto& tr = t.at(w[0], f.state);
    Word out{tr.target};
    Word tail = act(t, tr.output, rest);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }
  for (Letter b = 0; b < t.alphabet().size(); ++b) {
    const auto& tr = t.at(b, f.state);
    if (tr.target != w[0]) continue;
    Word out{b};
    Word tail = act(t, tr.output.inverse(), rest);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }
  throw std::runtime_error("oracle: row is not a permutation");
}

inline Word act(const Transducer& t, const GroupWord& g, const Word& w) {
  Word cur = w;
  for (const auto& f : g.factors()) cur = act_generator(t, f, cur);
  return cur;
}

inline void for_each_word(std::size_t na, std::size_t n, const std::function<void(const Word&)>& f) {
  Word w(n, 0);
  while (true) {
    f(w);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++w[i] < na) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

// true when g fixes every word of length exactly `depth` (hence all shorter)
inline bool acts_trivially(const Transducer& t, const GroupWord& g, std::size_t depth) {
  bool ok = true;
  for_each_word(t.alphabet().size(), depth, [&](const Word& w) {
    if (ok && act(t, g, w) != w) ok = false;
  });
  return ok;
}

// least n <= max with g^n trivial on words of length depth; 0 if none
inline std::uint64_t order_up_to(const Transducer& t, const GroupWord& g, std::uint64_t max, std::size_t depth) {
  GroupWord p;
  for (std::uint64_t n = 1; n <= max; ++n) {
    p = p * g;
    if (acts_trivially(t, p, depth)) return n;
  }
  return 0;
}

// size of the orbit of the word a^len under g, capped at max
inline std::uint64_t orbit_of_prefix(const Transducer& t, const GroupWord& g, Letter a, std::size_t len,
                                     std::uint64_t max) {
  const Word start(len, a);
  Word cur = start;
  for (std::uint64_t n = 1; n <= max; ++n) {
    cur = act(t, g, cur);
    if (cur == start) return n;
  }
  return 0;
}

}  // namespace oracle
