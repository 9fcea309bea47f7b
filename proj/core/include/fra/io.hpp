#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fra/action.hpp"
#include "fra/compile.hpp"
#include "fra/minsky.hpp"
#include "fra/transducer.hpp"

namespace fra {

using Witnesses = std::vector<std::pair<std::string, GroupWord>>;

struct TransducerDocument {
  Transducer transducer;
  Witnesses witnesses;
  std::optional<Ray> ray;

  friend bool operator==(const TransducerDocument&, const TransducerDocument&) = default;
};

/// Reads the transducer format:
///
///   # comment
///   alphabet: 0 1
///   states: a b c d e
///   identity: e
///   kind: finite_state            (or asynchronous; inferred when absent)
///   default: identity             (unset cells become (s, a))
///   a , 0 -> - , 1                (state , letter -> output , letter)
///   b , 0 -> a , 0
///   witness g = a b               (group word syntax, see parse_group_word)
///   ray: 0 1 , 0                  (preperiod , period)
///
/// Errors are ParseError carrying the offending line.
TransducerDocument parse_transducer(std::string_view text);

std::string serialize_transducer(const TransducerDocument& doc);
inline std::string serialize_transducer(const Transducer& t) { return serialize_transducer({t, {}, std::nullopt}); }

TransducerDocument document_of(const Compilation& c);

/// Reads the machine format:
///
///   states: s1 s2 halt
///   start: s1
///   final: halt
///   s1: III s2
///   s2: VII halt halt             (zero branch, then nonzero branch)
minsky::MinskyMachine parse_machine(std::string_view text);
std::string serialize_machine(const minsky::MinskyMachine& mm);

/// Whitespace separated tokens NAME, NAME' (inverse), each optionally
/// followed by ^k with k a signed integer. NAME is a state, a witness, or
/// "1" for the identity.
GroupWord parse_group_word(std::string_view text, const Transducer& t, const Witnesses& witnesses = {});

/// Whitespace separated letter names. A single token made only of
/// one-character letter names may be written without spaces ("0110").
Word parse_letters(std::string_view text, const Alphabet& alphabet);

/// "PRE,PER" with each side in parse_letters syntax.
Ray parse_ray(std::string_view text, const Alphabet& alphabet);
std::string format_ray(const Ray& r, const Alphabet& alphabet);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace fra
