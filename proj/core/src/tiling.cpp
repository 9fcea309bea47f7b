#include "fra/tiling.hpp"

#include <algorithm>
#include <set>

#include "fra/error.hpp"
#include "fra/trace.hpp"

namespace fra {

namespace {

Colour side(const WangTile& t, Side s) {
  switch (s) {
    case Side::north: return t.north;
    case Side::east: return t.east;
    case Side::south: return t.south;
    case Side::west: return t.west;
  }
  return 0;
}

void require_tileable(const Transducer& t) {
  if (!t.is_finite_state()) throw InvalidArgument("tiles need a finite-state transducer");
  auto report = validate(t);
  if (!report.ok()) throw InvalidArgument("tiles need a valid transducer: " + report.problems.front());
  for (Letter a = 0; a < t.alphabet().size(); ++a)
    for (StateId s = 0; s < t.states().size(); ++s) {
      const auto& out = t.at(a, s).output;
      if (out.size() == 1 && out[0].inverse) throw InvalidArgument("tiles need outputs without inverse states");
      if (out.empty() && t.states().identity_states().empty())
        throw InvalidArgument("tiles need an identity state to stand for empty outputs");
    }
}

StateId output_state(const Transducer& t, const Transition& tr) {
  return tr.output.empty() ? t.states().identity_states().front() : tr.output[0].state;
}

}  // namespace

Side parse_side(char c) {
  switch (c) {
    case 'N': return Side::north;
    case 'E': return Side::east;
    case 'S': return Side::south;
    case 'W': return Side::west;
  }
  throw InvalidArgument(std::string("unknown side '") + c + "'");
}

char to_char(Side s) { return "NESW"[static_cast<int>(s)]; }

Colour Tileset::colour(std::string_view name) const {
  for (Colour c = 0; c < colours.size(); ++c)
    if (colours[c] == name) return c;
  throw UnknownSymbol("unknown colour '" + std::string(name) + "'");
}

Tileset tileset_from_transducer(const Transducer& t) {
  require_tileable(t);
  const std::size_t na = t.alphabet().size(), ns = t.states().size();
  bool clash = false;
  for (const auto& n : t.alphabet().names()) clash = clash || t.states().find(n).has_value();

  Tileset ts;
  for (const auto& n : t.alphabet().names()) ts.colours.push_back(clash ? "a:" + n : n);
  for (const auto& n : t.states().names()) ts.colours.push_back(clash ? "s:" + n : n);
  auto letter = [](Letter a) { return static_cast<Colour>(a); };
  auto state = [na](StateId s) { return static_cast<Colour>(na + s); };

  for (StateId s = 0; s < ns; ++s)
    for (Letter a = 0; a < na; ++a) {
      const Transition& tr = t.at(a, s);
      ts.tiles.push_back({state(output_state(t, tr)), letter(tr.target), state(s), letter(a)});
    }
  const Colour nc = static_cast<Colour>(ts.colours.size());
  for (Colour c = 0; c < nc; ++c)
    for (Colour d = 0; d < nc; ++d)
      if (!(c >= na && d < na)) ts.tiles.push_back({c, d, c, d});
  return ts;
}

PropertyCheck check_tileset_property(const Tileset& ts, Side lambda, Side mu, TileProperty p) {
  if (lambda == mu) throw InvalidArgument("tile property needs two distinct sides");
  const std::size_t nc = ts.colours.size();
  std::vector<std::size_t> count(nc * nc, 0);
  for (const auto& tile : ts.tiles) ++count[side(tile, lambda) * nc + side(tile, mu)];
  for (Colour c = 0; c < nc; ++c)
    for (Colour d = 0; d < nc; ++d) {
      const std::size_t k = count[c * nc + d];
      if (k > 1 || (p == TileProperty::complete && k == 0)) return {false, std::pair{c, d}, k};
    }
  return {};
}

std::vector<TileRow> forced_rows(const Transducer& t, const std::vector<StateId>& base, const Word& west) {
  require_tileable(t);
  const Colour na = static_cast<Colour>(t.alphabet().size());
  std::vector<TileRow> rows;
  std::vector<StateId> south = base;
  for (Letter w : west) {
    TileRow row;
    Letter a = w;
    std::vector<StateId> north;
    for (StateId s : south) {
      const Transition& tr = t.at(a, s);
      const StateId up = output_state(t, tr);
      row.tiles.push_back({na + up, tr.target, na + s, a});
      north.push_back(up);
      a = tr.target;
    }
    rows.push_back(std::move(row));
    south = std::move(north);
  }
  return rows;
}

ProbeResult periodicity_probe(const Transducer& t, StateId c, std::size_t budget, std::size_t max_rows) {
  ProbeResult out{order(t, t.word(GroupWord::generator(c)), budget)};
  const auto* fin = std::get_if<Finite>(&out.order.value);
  if (!fin) return out;
  require_tileable(t);

  const std::size_t n = fin->n;
  const std::size_t na = t.alphabet().size();
  // keep the number of west-letter sequences modest
  std::size_t rows = 0, windows = 1;
  while (rows < max_rows && windows * na <= 4096) {
    ++rows;
    windows *= na;
  }
  out.rows_checked = true;
  out.rows = rows;
  out.windows = windows;
  out.periodic = true;
  const std::vector<StateId> base(2 * n, c);
  Word west(rows, 0);
  for (std::size_t k = 0; k < windows && out.periodic; ++k) {
    std::size_t v = k;
    for (std::size_t r = 0; r < rows; ++r, v /= na) west[r] = static_cast<Letter>(v % na);
    for (const auto& row : forced_rows(t, base, west))
      for (std::size_t j = 0; j < n; ++j)
        if (row.tiles[j] != row.tiles[j + n]) out.periodic = false;
  }
  return out;
}

std::string export_tileset(const Tileset& ts) {
  std::string out;
  for (const auto& tile : ts.tiles) {
    out += ts.colours[tile.north] + " " + ts.colours[tile.east] + " " + ts.colours[tile.south] + " " +
           ts.colours[tile.west] + "\n";
  }
  return out;
}

}  // namespace fra
