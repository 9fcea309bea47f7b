#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "fra/group_word.hpp"
#include "fra/trace.hpp"
#include "fra/transducer.hpp"

namespace fra {

/// The eventually periodic ray preperiod·period^∞.
struct Ray {
  Word preperiod;
  Word period;

  friend bool operator==(const Ray&, const Ray&) = default;
};

/// Primitive period and shortest preperiod. Throws on an empty period.
Ray canonical(Ray r);
/// a^∞
inline Ray constant_ray(Letter a) { return Ray{{}, {a}}; }
/// The letter at position i of the ray.
Letter ray_letter(const Ray& r, std::size_t i);
Word ray_prefix(const Ray& r, std::size_t n);

/// A finite set of sections closed under g ↦ g@a, each acting trivially on
/// the first letter. Certifies that every member is the identity.
struct ClosureCertificate {
  std::vector<GroupWord> sections;
};

/// g@(first prefix) == g@(second prefix) as reduced words, the two positions
/// sit at the same phase of the ray's period, and every letter in between
/// was fixed. Certifies that the ray is fixed.
struct RecurrenceCertificate {
  std::size_t first = 0;
  std::size_t second = 0;
  GroupWord section;
};

struct Yes {
  std::variant<ClosureCertificate, RecurrenceCertificate> certificate;
};
struct No {
  Word witness;  ///< a moved word (or the shortest moved ray prefix)
  Word image;    ///< its image
};
struct Unknown {
  std::size_t spent = 0;
};

/// Answer of a semidecision procedure.
using Verdict3 = std::variant<Yes, No, Unknown>;

inline bool is_yes(const Verdict3& v) { return std::holds_alternative<Yes>(v); }
inline bool is_no(const Verdict3& v) { return std::holds_alternative<No>(v); }
inline bool is_unknown(const Verdict3& v) { return std::holds_alternative<Unknown>(v); }

/// Image of the ray under g. Requires a finite-state transducer, where
/// sections stay no longer than g and a (section, phase) pair must recur.
Ray act_ray(const Transducer& t, const GroupWord& g, const Ray& r);

struct WordProblemResult {
  bool trivial = false;
  ClosureCertificate certificate;  ///< filled when trivial
  Word witness;                    ///< shortest, then least, moved word when not trivial
  Word image;
};

/// Exact word problem for finite-state transducers: closes the set of
/// sections {g@u} and checks every letter map is the identity.
WordProblemResult word_problem_fs(const Transducer& t, const GroupWord& g);

/// Budgeted word problem for any transducer: No for a moved word of length
/// at most `depth`, Yes when the section set closes within that depth.
Verdict3 word_problem_bounded(const Transducer& t, const GroupWord& g, std::size_t depth);

/// Does g fix the ray? `budget` bounds the number of ray letters read.
Verdict3 is_fixed_ray(const Transducer& t, const GroupWord& g, const Ray& r, std::size_t budget);

/// Independent re-checks of certificates.
bool verify_closure(const Transducer& t, const GroupWord& g, const ClosureCertificate& c);
bool verify_recurrence(const Transducer& t, const GroupWord& g, const Ray& r, const RecurrenceCertificate& c);
bool verify_moved(const Transducer& t, const GroupWord& g, const No& n);
/// Re-verifies whichever certificate a verdict carries (Unknown passes).
bool verify_word_verdict(const Transducer& t, const GroupWord& g, const Verdict3& v);
bool verify_ray_verdict(const Transducer& t, const GroupWord& g, const Ray& r, const Verdict3& v);

}  // namespace fra
