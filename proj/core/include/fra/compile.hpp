#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fra/action.hpp"
#include "fra/group_word.hpp"
#include "fra/minsky.hpp"
#include "fra/transducer.hpp"

namespace fra {

enum class CompilationKind { wp, order, orbit };

std::string to_string(CompilationKind k);

/// A transducer simulating a Minsky machine, with its distinguished elements.
struct Compilation {
  Transducer transducer;
  std::vector<std::pair<std::string, GroupWord>> witnesses;
  Ray base_ray;
  CompilationKind kind = CompilationKind::wp;
  /// The compiled state of the machine's start state, and the counter states.
  StateId start = 0;
  StateId x = 0;
  StateId y = 0;

  /// Throws UnknownSymbol when no witness has that name.
  const GroupWord& witness(std::string_view name) const;
  /// The compiled state of a machine state.
  StateId state(std::string_view machine_state) const { return transducer.states().index(machine_state, "state"); }
  /// s x^mx y^ny, i.e. the encoding of (s, log2 mx, log2 ny).
  GroupWord encode(StateId s, std::uint64_t mx, std::uint64_t ny) const;
};

/// Asynchronous encoding for machines over {I, VI, IX}. Machine state names
/// become state names; x, y, t and u are reserved. Witnesses: "start" = s_* x y,
/// "g" = start·t·start⁻¹, "u", and "commutator" = [g, u].
Compilation compile_wp(const minsky::MinskyMachine& mm);

/// Finite-state encoding for machines over {III, IV, V, VII, VIII}, whose
/// letters are grouped in one block per instruction type. Witness "start".
Compilation compile_order(const minsky::MinskyMachine& mm);

/// Finite-state encoding for machines over {III, IX, X}, with the shared
/// letter 0 and base ray 0^∞. Witness "start".
Compilation compile_orbit(const minsky::MinskyMachine& mm);

/// [(s_* x y^(2^n)) t (s_* x y^(2^n))⁻¹, u] in a compile_wp result.
GroupWord make_uniform_witness(const Compilation& comp, unsigned n);

}  // namespace fra
