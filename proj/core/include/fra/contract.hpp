#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fra/group_word.hpp"
#include "fra/transducer.hpp"

namespace fra {

/// Φ₀ over {0,1}³ and Φ₁..Φ_ℓ over {0,1}, all on the same stateset.
struct AuxiliaryTransducers {
  Transducer phi0;
  std::vector<Transducer> phi;
  /// s₁..s_ℓ: every state other than x, y and the identity states.
  std::vector<StateId> s;
};

/// Φᵢ(a, q) = (a = 0 ? q : 1, q = sᵢ ? 1−a : a), and
/// Φ₀((a,b,c), sᵢ) = (c = 0 ? sᵢ : 1, (a,b,1−c)),
/// Φ₀((a,b,c), x) = (a = 0 ? x : 1, (1−a,b,c)),
/// Φ₀((a,b,c), y) = (b = 0 ? y : 1, (a,1−b,c)).
/// The states named "x" and "y" must exist.
AuxiliaryTransducers auxiliary_transducers(const StateSet& states);

/// Φ ∘ Φ₀ ∘ Φ₁ ∘ ... ∘ Φ_ℓ. Letters are (a, (j₀, (j₁, ...))), so letter
/// (a, j) has index a·2^(ℓ+3) + j and j = 0 is the all-zero tail.
/// Throws unless Φ is finite-state with commuting x and y.
Transducer contractify(const Transducer& phi);

/// Outcome of checking Φ'((j,a), (s xᵐ yⁿ)^(4t)) against Φ(a, (s xᵐ yⁿ)^t).
struct PowerRelationReport {
  std::size_t checked = 0;  ///< (s, m, n, t, a) cases whose base trace fixes a with an s' x^m' y^n' residual
  std::size_t tails = 0;    ///< (case, j) pairs examined
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty() && checked > 0; }
};

/// For every non-counter state s, 0 ≤ m, n ≤ max_exp and 1 ≤ t ≤ max_t.
/// Conjugacy is decided by rotation first, then by conjugators of length at
/// most `conjugator_length`, equality by word_problem_fs.
PowerRelationReport check_power_relation(const Transducer& phi, const Transducer& contracted, unsigned max_t = 2,
                                         unsigned max_exp = 2, std::size_t conjugator_length = 2);

struct NucleusReport {
  std::vector<GroupWord> nucleus;  ///< shortlex-least representatives, sorted
  std::size_t closure_depth = 0;   ///< product rounds performed
  bool complete = false;
  std::size_t elements_seen = 0;
};

/// Iterates N ← N ∪ {cycle elements of the section graph of N·N and their
/// sections} from the generators until stable. `budget` bounds the number
/// of distinct elements created.
NucleusReport nucleus(const Transducer& phi, std::size_t budget);

struct NuclearCheck {
  bool nuclear = true;
  /// First (a, s₁, s₂) whose section of s₁s₂ is not a state.
  Letter letter = 0;
  StateId first = 0;
  StateId second = 0;
  GroupWord section;
};

NuclearCheck nuclear_check(const Transducer& phi);
inline bool is_nuclear(const Transducer& phi) { return nuclear_check(phi).nuclear; }

struct Nuclearized {
  Transducer transducer;
  std::size_t block = 1;         ///< n with letters A^n
  std::size_t added_states = 0;  ///< nucleus elements that were not states already
};

/// Adds the nucleus as states (named "nuc.<word>") and groups letters into
/// blocks of the least n ≤ budget making the result nuclear.
Nuclearized nuclearize(const Transducer& phi, std::size_t budget);

/// The least N ≤ n_max such that every reduced path of length N in the dual
/// Moore diagram has an empty output somewhere, if any.
std::optional<std::size_t> path_contraction_bound(const Transducer& phi, std::size_t n_max);

}  // namespace fra
