#include "fra/trace.hpp"

#include "fra/error.hpp"

namespace fra {

TraceResult trace_letter(const Transducer& t, Letter a, const GroupWord& g) {
  if (a >= t.alphabet().size()) throw UnknownSymbol("letter index out of range");
  TraceResult r{GroupWord{}, a};
  for (const auto& f : g.factors()) {
    if (f.state >= t.states().size()) throw UnknownSymbol("state index out of range");
    if (!f.inverse) {
      const auto& tr = t.at(r.out_letter, f.state);
      r.residual *= tr.output;
      r.out_letter = tr.target;
    } else {
      auto b = t.preimage(f.state, r.out_letter);
      if (!b)
        throw InvalidArgument("cannot invert state " + t.states().name(f.state) +
                              ": its letter map is not a permutation");
      r.residual *= t.at(*b, f.state).output.inverse();
      r.out_letter = *b;
    }
  }
  return r;
}

Word act_word(const Transducer& t, const GroupWord& g, const Word& w) {
  Word out;
  out.reserve(w.size());
  GroupWord section = g;
  for (Letter a : w) {
    auto r = trace_letter(t, a, section);
    out.push_back(r.out_letter);
    section = std::move(r.residual);
  }
  return out;
}

GroupWord state_at(const Transducer& t, const GroupWord& g, const Word& u) {
  GroupWord section = g;
  for (Letter a : u) section = trace_letter(t, a, section).residual;
  return section;
}

std::vector<Letter> letter_permutation(const Transducer& t, const GroupWord& g) {
  std::vector<Letter> p(t.alphabet().size());
  for (Letter a = 0; a < p.size(); ++a) p[a] = trace_letter(t, a, g).out_letter;
  return p;
}

Transducer compose(const Transducer& phi, const Transducer& psi) {
  if (phi.states().names() != psi.states().names())
    throw InvalidArgument("compose: transducers must share the same stateset");
  const auto& A = phi.alphabet();
  const auto& B = psi.alphabet();

  Alphabet AB;
  for (Letter a = 0; a < A.size(); ++a)
    for (Letter b = 0; b < B.size(); ++b) AB.add(A.name(a) + "|" + B.name(b));

  StateSet S;
  for (StateId s = 0; s < phi.states().size(); ++s)
    S.add(phi.states().name(s), phi.states().is_identity(s) && psi.states().is_identity(s));

  const auto kind = phi.is_finite_state() && psi.is_finite_state() ? TransducerKind::finite_state
                                                                    : TransducerKind::asynchronous;
  TransducerBuilder builder(AB, S, kind);
  for (Letter a = 0; a < A.size(); ++a)
    for (Letter b = 0; b < B.size(); ++b)
      for (StateId s = 0; s < S.size(); ++s) {
        auto inner = trace_letter(psi, b, psi.word(GroupWord::generator(s)));
        auto outer = trace_letter(phi, a, phi.word(inner.residual));
        builder.set(a * static_cast<Letter>(B.size()) + b, s, outer.residual,
                    outer.out_letter * static_cast<Letter>(B.size()) + inner.out_letter);
      }
  return builder.build();
}

Letter block_letter(const Transducer& t, const Word& block) {
  Letter index = 0;
  for (Letter a : block) {
    if (a >= t.alphabet().size()) throw UnknownSymbol("letter index out of range");
    index = index * static_cast<Letter>(t.alphabet().size()) + a;
  }
  return index;
}

Transducer expand_alphabet(const Transducer& t, std::size_t n) {
  if (n == 0) throw InvalidArgument("expand_alphabet: block size must be positive");
  const auto& A = t.alphabet();
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count *= A.size();
    if (count > (1U << 24)) throw InvalidArgument("expand_alphabet: block alphabet too large");
  }

  std::vector<Word> blocks(count, Word(n));
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t v = i;
    for (std::size_t k = n; k-- > 0;) {
      blocks[i][k] = static_cast<Letter>(v % A.size());
      v /= A.size();
    }
  }

  Alphabet blocked;
  for (const auto& b : blocks) blocked.add(join_word(A, b, "/"));

  TransducerBuilder builder(blocked, t.states(), t.kind());
  for (std::size_t i = 0; i < count; ++i)
    for (StateId s = 0; s < t.states().size(); ++s) {
      GroupWord section = t.word(GroupWord::generator(s));
      Word image;
      for (Letter a : blocks[i]) {
        auto r = trace_letter(t, a, section);
        image.push_back(r.out_letter);
        section = std::move(r.residual);
      }
      builder.set(static_cast<Letter>(i), s, section, block_letter(t, image));
    }
  return builder.build();
}

}  // namespace fra
