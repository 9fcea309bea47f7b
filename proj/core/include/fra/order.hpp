#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fra/group_word.hpp"
#include "fra/transducer.hpp"

namespace fra {

/// One orbit of g on the alphabet, listed from its least letter, together
/// with the section of g^(orbit length) at that letter.
struct Cycle {
  std::vector<Letter> letters;
  GroupWord section;
};

struct CycleDecomposition {
  std::vector<Cycle> cycles;
};

CycleDecomposition cycle_decomposition(const Transducer& t, const GroupWord& g);

enum class GraphMode { symmetric_conjugacy, element };

struct ClassEdge {
  GroupWord from;
  GroupWord to;
  std::uint64_t label = 1;
  Letter representative = 0;  ///< first letter of the cycle the edge comes from
};

/// Integer-labelled graph over normalized words. In symmetric_conjugacy
/// mode a node stands for {h^(±x)}; in element mode for a single element.
struct ClassGraph {
  GraphMode mode = GraphMode::symmetric_conjugacy;
  std::vector<GroupWord> nodes;
  std::vector<ClassEdge> edges;
};

struct Finite {
  std::uint64_t n = 1;
};
/// A reachable cycle of edges whose labels multiply to more than 1.
struct InfiniteCertified {
  std::vector<ClassEdge> cycle;
};
struct UnknownOrder {
  std::size_t explored = 0;
  std::string reason;
};

struct OrderResult {
  std::variant<Finite, InfiniteCertified, UnknownOrder> value;
  ClassGraph graph;
};

inline bool is_finite(const OrderResult& r) { return std::holds_alternative<Finite>(r.value); }
inline bool is_infinite(const OrderResult& r) { return std::holds_alternative<InfiniteCertified>(r.value); }
inline bool is_unknown(const OrderResult& r) { return std::holds_alternative<UnknownOrder>(r.value); }
std::string describe(const OrderResult& r);

struct OrderOptions {
  /// Maximum number of expanded graph nodes.
  std::size_t budget = 1000;
  /// Erase generators proven trivial (word_problem_fs) before keying nodes.
  bool erase_trivial_generators = true;
  /// When > 0, merge a new class with an existing one of equal length if a
  /// conjugator of at most this length is found (equality by word_problem_fs).
  std::size_t conjugator_length = 0;
};

/// Least word among the cyclic rotations of w and of w⁻¹.
GroupWord symmetric_class_key(const GroupWord& w);

/// Order of g from the class graph, confirmed by word_problem_fs on gⁿ and
/// g^(n/p) for every prime p | n.
OrderResult order(const Transducer& t, const GroupWord& g, const OrderOptions& options);
inline OrderResult order(const Transducer& t, const GroupWord& g, std::size_t budget) {
  return order(t, g, OrderOptions{budget});
}

/// Size of the orbit of a^∞ under ⟨g⟩, from the element-mode path, confirmed
/// by act_ray on gⁿ and on g^(n/p).
OrderResult orbit_size_ray(const Transducer& t, const GroupWord& g, Letter a, const OrderOptions& options);
inline OrderResult orbit_size_ray(const Transducer& t, const GroupWord& g, Letter a, std::size_t budget) {
  return orbit_size_ray(t, g, a, OrderOptions{budget});
}

/// Replays an InfiniteCertified cycle through cycle_decomposition.
bool verify_infinite_certificate(const Transducer& t, const InfiniteCertified& c, GraphMode mode,
                                 const OrderOptions& options = {});

/// Re-derives every edge of a graph from an independent cycle_decomposition.
bool verify_graph(const Transducer& t, const ClassGraph& g, const OrderOptions& options = {});

/// Edge list in text form, one "from -> to [label]" line per edge.
std::string serialize_certificate(const ClassGraph& graph, const StateSet& states);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace fra
