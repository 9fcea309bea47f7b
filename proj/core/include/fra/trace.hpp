#pragma once

#include <vector>

#include "fra/group_word.hpp"
#include "fra/transducer.hpp"

namespace fra {

/// (g', a') with a·g = g'·a': the residual and the image of the letter.
struct TraceResult {
  GroupWord residual;
  Letter out_letter = 0;

  friend bool operator==(const TraceResult&, const TraceResult&) = default;
};

/// Pushes letter `a` through `g` factor by factor. Inverse factors are
/// resolved through the unique preimage of the current letter.
TraceResult trace_letter(const Transducer& t, Letter a, const GroupWord& g);

/// Image of `w` under `g`.
Word act_word(const Transducer& t, const GroupWord& g, const Word& w);

/// The section g@u, defined by (uv)^g = u^g v^(g@u).
GroupWord state_at(const Transducer& t, const GroupWord& g, const Word& u);

/// The permutation of the alphabet induced by g: result[a] = a^g.
std::vector<Letter> letter_permutation(const Transducer& t, const GroupWord& g);

/// Φ∘Ψ over A×B. For letter (a,b) and state s, Ψ first rewrites b giving
/// (w, b'), then a is traced through w by Φ giving (w', a'); the result is
/// (w', (a', b')). Both transducers must share the same state names.
/// Product letters are named "a|b" and indexed a·|B| + b.
Transducer compose(const Transducer& phi, const Transducer& psi);

/// The same action read n letters at a time. Block letters are named
/// "a1/a2/.../an" and indexed big-endian in base |A|.
Transducer expand_alphabet(const Transducer& t, std::size_t n);

/// Index of the block a1..an in expand_alphabet(t, n).
Letter block_letter(const Transducer& t, const Word& block);

}  // namespace fra
