#include "fra/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "fra/error.hpp"

namespace fra {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(trim(hash == std::string_view::npos ? line : line.substr(0, hash)));
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

// "key: rest" when key is one of `keys`
std::optional<std::pair<std::string, std::string>> header(const std::string& line,
                                                          std::initializer_list<std::string_view> keys) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string key(trim(std::string_view(line).substr(0, colon)));
  for (auto k : keys)
    if (key == k) return std::pair{key, std::string(trim(std::string_view(line).substr(colon + 1)))};
  return std::nullopt;
}

std::string join(const std::vector<std::string>& names, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

GroupWord parse_output(const std::string& text, const StateSet& states, std::size_t line) {
  if (trim(text) == "-") return {};
  GroupWord w;
  for (auto tok : split_ws(text)) {
    bool inv = !tok.empty() && tok.back() == '\'';
    if (inv) tok.pop_back();
    auto s = states.find(tok);
    if (!s) throw ParseError("unknown state '" + tok + "'", line);
    w.push_back({*s, inv});
  }
  return w;
}

std::string format_output(const GroupWord& w, const StateSet& states) {
  return w.empty() ? "-" : to_string(w, states);
}

}  // namespace

TransducerDocument parse_transducer(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::optional<StateSet> states;
  std::vector<std::string> identity;
  std::optional<TransducerKind> kind;
  bool defaults = false;

  struct Row {
    StateId s;
    Letter a;
    GroupWord out;
    Letter to;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::vector<std::pair<std::string, std::size_t>> witness_lines;
  std::optional<std::pair<std::string, std::size_t>> ray_line;

  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const std::string line = strip_comment(lines[i]);
    if (line.empty()) continue;

    if (auto h = header(line, {"alphabet", "states", "identity", "kind", "default", "ray"})) {
      const auto& [key, rest] = *h;
      try {
        if (key == "alphabet") {
          if (alphabet) throw ParseError("alphabet declared twice", ln);
          alphabet = Alphabet(split_ws(rest));
        } else if (key == "states") {
          if (states) throw ParseError("states declared twice", ln);
          states = StateSet(split_ws(rest));
        } else if (key == "identity") {
          for (auto& n : split_ws(rest)) identity.push_back(n);
        } else if (key == "kind") {
          if (rest == "finite_state")
            kind = TransducerKind::finite_state;
          else if (rest == "asynchronous")
            kind = TransducerKind::asynchronous;
          else
            throw ParseError("unknown kind '" + rest + "'", ln);
        } else if (key == "default") {
          if (rest != "identity") throw ParseError("unknown default rule '" + rest + "'", ln);
          defaults = true;
        } else {
          ray_line = {rest, ln};
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), ln);
      }
      continue;
    }

    if (line.rfind("witness", 0) == 0 && line.size() > 7 && (line[7] == ' ' || line[7] == '\t')) {
      witness_lines.emplace_back(line.substr(8), ln);
      continue;
    }

    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError("cannot read line '" + line + "'", ln);
    if (!alphabet || !states) throw ParseError("transition before the alphabet and states headers", ln);
    std::string lhs = line.substr(0, arrow), rhs = line.substr(arrow + 2);
    auto lc = lhs.find(','), rc = rhs.rfind(',');
    if (lc == std::string::npos || rc == std::string::npos)
      throw ParseError("expected 'state , letter -> output , letter'", ln);
    std::string sname(trim(std::string_view(lhs).substr(0, lc)));
    std::string aname(trim(std::string_view(lhs).substr(lc + 1)));
    std::string out(trim(std::string_view(rhs).substr(0, rc)));
    std::string tname(trim(std::string_view(rhs).substr(rc + 1)));
    auto s = states->find(sname);
    if (!s) throw ParseError("unknown state '" + sname + "'", ln);
    auto a = alphabet->find(aname);
    if (!a) throw ParseError("unknown letter '" + aname + "'", ln);
    auto to = alphabet->find(tname);
    if (!to) throw ParseError("unknown letter '" + tname + "'", ln);
    rows.push_back({*s, *a, parse_output(out, *states, ln), *to, ln});
  }

  const std::size_t last = lines.size();
  if (!alphabet) throw ParseError("missing alphabet header", last);
  if (!states) throw ParseError("missing states header", last);
  for (const auto& n : identity) {
    auto s = states->find(n);
    if (!s) throw ParseError("unknown identity state '" + n + "'", last);
    states->set_identity(*s);
  }
  if (!kind) {
    kind = TransducerKind::finite_state;
    for (const auto& r : rows)
      if (r.out.size() > 1) kind = TransducerKind::asynchronous;
  }

  TransducerBuilder b(*alphabet, *states, *kind);
  std::map<std::pair<StateId, Letter>, std::size_t> where;
  for (const auto& r : rows) {
    if (b.has(r.a, r.s))
      throw ParseError("duplicate transition for (" + states->name(r.s) + ", " + alphabet->name(r.a) + ")", r.line);
    GroupWord out;
    for (const auto& f : r.out.factors())
      if (!states->is_identity(f.state)) out.push_back(f);
    b.set(r.a, r.s, out, r.to);
    where[{r.s, r.a}] = r.line;
  }
  if (defaults) b.default_identity();
  Transducer t = b.build();

  for (StateId s = 0; s < states->size(); ++s) {
    std::map<Letter, Letter> seen;
    for (Letter a = 0; a < alphabet->size(); ++a) {
      const auto& e = t.entry(a, s);
      if (!e) continue;
      auto [it, fresh] = seen.emplace(e->target, a);
      if (!fresh) {
        auto w = where.find({s, a});
        throw ParseError("letter map not a permutation for state " + states->name(s) + ": " +
                             alphabet->name(it->second) + " and " + alphabet->name(a) + " both go to " +
                             alphabet->name(e->target),
                         w == where.end() ? last : w->second);
      }
    }
  }
  auto report = validate(t);
  if (!report.ok()) throw ParseError(report.problems.front(), last);

  TransducerDocument doc{std::move(t), {}, std::nullopt};
  for (const auto& [body, ln] : witness_lines) {
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'witness NAME = WORD'", ln);
    std::string name(trim(std::string_view(body).substr(0, eq)));
    if (name.empty() || name.find_first_of(" \t'^") != std::string::npos)
      throw ParseError("bad witness name '" + name + "'", ln);
    for (const auto& [n, w] : doc.witnesses)
      if (n == name) throw ParseError("witness '" + name + "' defined twice", ln);
    try {
      doc.witnesses.emplace_back(name, parse_group_word(body.substr(eq + 1), doc.transducer, doc.witnesses));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), ln);
    }
  }
  if (ray_line) {
    try {
      doc.ray = parse_ray(ray_line->first, doc.transducer.alphabet());
    } catch (const Error& e) {
      throw ParseError(e.what(), ray_line->second);
    }
  }
  return doc;
}

std::string serialize_transducer(const TransducerDocument& doc) {
  const Transducer& t = doc.transducer;
  const auto& st = t.states();
  std::string out;
  out += "alphabet: " + join(t.alphabet().names()) + "\n";
  out += "states: " + join(st.names()) + "\n";
  std::vector<std::string> ids;
  for (StateId s : st.identity_states()) ids.push_back(st.name(s));
  if (!ids.empty()) out += "identity: " + join(ids) + "\n";
  out += std::string("kind: ") + (t.is_finite_state() ? "finite_state" : "asynchronous") + "\n";
  for (StateId s = 0; s < st.size(); ++s) {
    if (st.is_identity(s)) continue;
    for (Letter a = 0; a < t.alphabet().size(); ++a) {
      const auto& e = t.entry(a, s);
      if (!e) continue;
      out += st.name(s) + " , " + t.alphabet().name(a) + " -> " + format_output(e->output, st) + " , " +
             t.alphabet().name(e->target) + "\n";
    }
  }
  for (const auto& [name, w] : doc.witnesses) out += "witness " + name + " = " + to_string(w, st) + "\n";
  if (doc.ray) out += "ray: " + format_ray(*doc.ray, t.alphabet()) + "\n";
  return out;
}

TransducerDocument document_of(const Compilation& c) { return {c.transducer, c.witnesses, c.base_ray}; }

minsky::MinskyMachine parse_machine(std::string_view text) {
  std::optional<std::vector<std::string>> names;
  std::optional<std::pair<std::string, std::size_t>> start, final;
  struct Line {
    std::string state;
    std::vector<std::string> words;
    std::size_t line;
  };
  std::vector<Line> body;

  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const std::string line = strip_comment(lines[i]);
    if (line.empty()) continue;
    if (auto h = header(line, {"states", "start", "final"})) {
      if (h->first == "states") {
        if (names) throw ParseError("states declared twice", ln);
        names = split_ws(h->second);
      } else if (h->first == "start") {
        start = {h->second, ln};
      } else {
        final = {h->second, ln};
      }
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'state: TYPE target [target]'", ln);
    body.push_back({std::string(trim(std::string_view(line).substr(0, colon))),
                    split_ws(std::string_view(line).substr(colon + 1)), ln});
  }

  const std::size_t last = lines.size();
  if (!names || names->empty()) throw ParseError("missing states header", last);
  if (!start) throw ParseError("missing start header", last);
  if (!final) throw ParseError("missing final header", last);
  std::map<std::string, minsky::StateIndex> index;
  for (std::size_t i = 0; i < names->size(); ++i)
    if (!index.emplace((*names)[i], static_cast<minsky::StateIndex>(i)).second)
      throw ParseError("duplicate state '" + (*names)[i] + "'", last);
  auto lookup = [&](const std::string& n, std::size_t ln) {
    auto it = index.find(n);
    if (it == index.end()) throw ParseError("unknown state '" + n + "'", ln);
    return it->second;
  };

  std::vector<std::optional<minsky::Instruction>> program(names->size());
  const auto s0 = lookup(start->first, start->second);
  const auto sf = lookup(final->first, final->second);
  for (const auto& l : body) {
    const auto s = lookup(l.state, l.line);
    if (s == sf) throw ParseError("the final state takes no instruction", l.line);
    if (program[s]) throw ParseError("second instruction for state '" + l.state + "'", l.line);
    if (l.words.empty()) throw ParseError("missing instruction type", l.line);
    minsky::Type type;
    try {
      type = minsky::parse_type(l.words[0]);
    } catch (const Error&) {
      throw ParseError("unknown instruction type '" + l.words[0] + "'", l.line);
    }
    const std::size_t arity = minsky::is_branching(type) ? 2 : 1;
    if (l.words.size() != arity + 1)
      throw ParseError("type " + l.words[0] + " takes " + std::to_string(arity) + " target(s)", l.line);
    minsky::Instruction ins{type, lookup(l.words[1], l.line), 0};
    ins.target_nonzero = arity == 2 ? lookup(l.words[2], l.line) : ins.target;
    program[s] = ins;
  }
  for (std::size_t s = 0; s < program.size(); ++s)
    if (s != sf && !program[s]) throw ParseError("state '" + (*names)[s] + "' has no instruction", last);
  return minsky::MinskyMachine(*names, s0, sf, std::move(program));
}

std::string serialize_machine(const minsky::MinskyMachine& mm) {
  std::string out = "states: " + join(mm.states()) + "\n";
  out += "start: " + mm.name(mm.start()) + "\n";
  out += "final: " + mm.name(mm.final_state()) + "\n";
  for (minsky::StateIndex s = 0; s < mm.size(); ++s) {
    const auto& ins = mm.instruction(s);
    if (!ins) continue;
    out += mm.name(s) + ": " + minsky::to_string(ins->type) + " " + mm.name(ins->target);
    if (minsky::is_branching(ins->type)) out += " " + mm.name(ins->target_nonzero);
    out += "\n";
  }
  return out;
}

GroupWord parse_group_word(std::string_view text, const Transducer& t, const Witnesses& witnesses) {
  GroupWord w;
  for (auto tok : split_ws(text)) {
    std::int64_t power = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      std::string exp = tok.substr(caret + 1);
      tok.resize(caret);
      auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), power);
      if (ec != std::errc{} || ptr != exp.data() + exp.size()) throw ParseError("bad exponent '" + exp + "'", 0);
    }
    bool inv = false;
    while (!tok.empty() && tok.back() == '\'') {
      inv = !inv;
      tok.pop_back();
    }
    GroupWord base;
    if (auto s = t.states().find(tok)) {
      base = GroupWord::generator(*s);
    } else {
      bool found = false;
      for (const auto& [name, value] : witnesses)
        if (name == tok) {
          base = value;
          found = true;
          break;
        }
      if (!found && tok != "1") throw UnknownSymbol("unknown state or witness '" + tok + "'");
    }
    if (inv) base = base.inverse();
    w *= base.power(power);
  }
  return t.word(w);
}

Word parse_letters(std::string_view text, const Alphabet& alphabet) {
  Word out;
  for (const auto& tok : split_ws(text)) {
    if (auto a = alphabet.find(tok)) {
      out.push_back(*a);
      continue;
    }
    for (char c : tok) {
      auto a = alphabet.find(std::string_view(&c, 1));
      if (!a) throw UnknownSymbol("unknown letter '" + tok + "'");
      out.push_back(*a);
    }
  }
  return out;
}

Ray parse_ray(std::string_view text, const Alphabet& alphabet) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("ray must be written PRE,PER", 0);
  Ray r{parse_letters(text.substr(0, comma), alphabet), parse_letters(text.substr(comma + 1), alphabet)};
  if (r.period.empty()) throw ParseError("ray period must be nonempty", 0);
  return r;
}

std::string format_ray(const Ray& r, const Alphabet& alphabet) {
  return join_word(alphabet, r.preperiod) + "," + join_word(alphabet, r.period);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace fra
