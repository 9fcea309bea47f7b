#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fra/order.hpp"
#include "fra/transducer.hpp"

namespace fra {

using Colour = std::uint32_t;

struct WangTile {
  Colour north = 0, east = 0, south = 0, west = 0;
  friend auto operator<=>(const WangTile&, const WangTile&) = default;
};

enum class Side { north, east, south, west };

/// Parses "N", "E", "S" or "W".
Side parse_side(char c);
char to_char(Side s);

struct Tileset {
  std::vector<std::string> colours;
  std::vector<WangTile> tiles;

  Colour colour(std::string_view name) const;
};

/// Colours are the letters followed by the states (prefixed "a:" and "s:"
/// when a letter and a state share a name). Φ(a,s) = (s',a') gives the tile
/// (N,E,S,W) = (s',a',s,a); an empty output uses the first identity state.
/// Every other pair (c,d) outside S×A gives the tile (c,d,c,d).
Tileset tileset_from_transducer(const Transducer& t);

enum class TileProperty { deterministic, complete };

struct PropertyCheck {
  bool holds = true;
  std::optional<std::pair<Colour, Colour>> counterexample;
  std::size_t matches = 0;  ///< tiles matching the counterexample pair
};

/// At most one (deterministic) or exactly one (complete) tile per colour
/// pair on sides (lambda, mu).
PropertyCheck check_tileset_property(const Tileset& ts, Side lambda, Side mu, TileProperty p);

/// One row of the SW-forced tiling, west to east.
struct TileRow {
  std::vector<WangTile> tiles;
};

/// Rows of the forced tiling above `base` (south colours of row 0, all
/// states) with the given west letters, one per row.
std::vector<TileRow> forced_rows(const Transducer& t, const std::vector<StateId>& base, const Word& west);

struct ProbeResult {
  OrderResult order;
  /// Only meaningful when the order is finite.
  bool rows_checked = false;
  bool periodic = false;
  std::size_t rows = 0;
  std::size_t windows = 0;
};

/// Every tiling of the upper half-plane with c^∞ on the axis is horizontally
/// n-periodic iff c has finite order n. Delegates to order() and, for a
/// finite order, rebuilds up to `max_rows` forced rows over a width-2n window
/// for every choice of west letters and checks columns j and j+n agree.
ProbeResult periodicity_probe(const Transducer& t, StateId c, std::size_t budget, std::size_t max_rows = 5);

/// One tile per line: "N E S W".
std::string export_tileset(const Tileset& ts);

}  // namespace fra
