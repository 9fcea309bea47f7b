#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <ostream>

#include "fra/action.hpp"
#include "fra/compile.hpp"
#include "fra/contract.hpp"
#include "fra/error.hpp"
#include "fra/io.hpp"
#include "fra/order.hpp"
#include "fra/tiling.hpp"
#include "fra/trace.hpp"

namespace fra::cli {

std::size_t default_budget() {
  if (const char* env = std::getenv("FRA_DEFAULT_BUDGET")) {
    std::size_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc{} && ptr == end && v > 0) return v;
  }
  return 1000;
}

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string letters(const Alphabet& a, const Word& w) { return w.empty() ? "-" : join_word(a, w); }

TransducerDocument load(const std::string& path) { return parse_transducer(read_file(path)); }

GroupWord element(const TransducerDocument& doc, const std::string& text) {
  return parse_group_word(text, doc.transducer, doc.witnesses);
}

void summary(std::ostream& out, const Transducer& t) {
  out << "letters: " << t.alphabet().size() << "\n";
  out << "states: " << t.states().size() << "\n";
  out << "kind: " << (t.is_finite_state() ? "finite_state" : "asynchronous") << "\n";
}

void save(const std::string& path, const std::string& text, std::ostream& out) {
  write_file(path, text);
  out << "written: " << path << "\n";
}

int report_verdict(std::ostream& out, const Transducer& t, const Verdict3& v) {
  if (const auto* y = std::get_if<Yes>(&v)) {
    out << "result: yes\n";
    if (const auto* c = std::get_if<ClosureCertificate>(&y->certificate)) {
      out << "certificate: closure\n";
      out << "sections: " << c->sections.size() << "\n";
    } else {
      const auto& r = std::get<RecurrenceCertificate>(y->certificate);
      out << "certificate: recurrence\n";
      out << "positions: " << r.first << " " << r.second << "\n";
      out << "section: " << to_string(r.section, t.states()) << "\n";
    }
    return kOk;
  }
  if (const auto* n = std::get_if<No>(&v)) {
    out << "result: no\n";
    out << "witness: " << letters(t.alphabet(), n->witness) << "\n";
    out << "image: " << letters(t.alphabet(), n->image) << "\n";
    return kOk;
  }
  out << "result: unknown\n";
  out << "spent: " << std::get<Unknown>(v).spent << "\n";
  return kUnknown;
}

int report_order(std::ostream& out, const Transducer& t, const OrderResult& r, bool graph) {
  out << "result: " << describe(r) << "\n";
  out << "nodes: " << r.graph.nodes.size() << "\n";
  out << "edges: " << r.graph.edges.size() << "\n";
  if (const auto* inf = std::get_if<InfiniteCertified>(&r.value)) {
    for (const auto& e : inf->cycle)
      out << "cycle: " << to_string(e.from, t.states()) << " -> " << to_string(e.to, t.states()) << " [" << e.label
          << "]\n";
  }
  if (const auto* u = std::get_if<UnknownOrder>(&r.value)) out << "reason: " << u->reason << "\n";
  if (graph) out << serialize_certificate(r.graph, t.states());
  return is_unknown(r) ? kUnknown : kOk;
}

struct Options {
  std::string file, word, element, ray, letter, target, output, depth_text;
  std::size_t budget = 0, depth = 0, max_rows = 5;
  std::uint64_t fuel = 1000, m = 0, n = 0;
  unsigned witness_n = 0, conjugators = 0;
  bool graph = false;
  std::vector<std::string> checks;
};

using Handler = std::function<int(std::ostream&)>;

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"functionally recursive and automata groups"};
  app.name("fra");
  app.require_subcommand(1);
  Options o;
  o.budget = default_budget();
  Handler handler;

  auto file = [&](CLI::App* c) { c->add_option("FILE", o.file, "input document")->required(); };
  auto budget = [&](CLI::App* c) { c->add_option("--budget", o.budget, "node or element budget"); };
  auto elem = [&](CLI::App* c) { c->add_option("--element", o.element, "group word, e.g. \"a b' c^3\"")->required(); };
  auto output = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("-o,--output", o.output, "output file");
    if (required) opt->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a transducer document");
  file(validate_cmd);
  validate_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      summary(os, doc.transducer);
      os << "witnesses: " << doc.witnesses.size() << "\n";
      os << "valid: yes\n";
      return kOk;
    };
  });

  auto* act_cmd = app.add_subcommand("act", "image and section of a finite word");
  file(act_cmd);
  elem(act_cmd);
  act_cmd->add_option("--word", o.word, "letters")->required();
  act_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      const auto& t = doc.transducer;
      GroupWord g = element(doc, o.element);
      Word w = parse_letters(o.word, t.alphabet());
      os << "image: " << letters(t.alphabet(), act_word(t, g, w)) << "\n";
      os << "section: " << to_string(state_at(t, g, w), t.states()) << "\n";
      return kOk;
    };
  });

  auto* ray_cmd = app.add_subcommand("ray", "image of an eventually periodic ray");
  file(ray_cmd);
  elem(ray_cmd);
  ray_cmd->add_option("--ray", o.ray, "PRE,PER")->required();
  budget(ray_cmd);
  ray_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      const auto& t = doc.transducer;
      GroupWord g = element(doc, o.element);
      Ray r = parse_ray(o.ray, t.alphabet());
      if (t.is_finite_state()) {
        Ray img = act_ray(t, g, r);
        os << "image: " << format_ray(img, t.alphabet()) << "\n";
        os << "fixed: " << yes_no(img == canonical(r)) << "\n";
        return kOk;
      }
      return report_verdict(os, t, is_fixed_ray(t, g, r, o.budget));
    };
  });

  auto* wp_cmd = app.add_subcommand("wp", "word problem");
  file(wp_cmd);
  elem(wp_cmd);
  wp_cmd->add_option("--depth", o.depth, "bounded search depth (default: exact for finite-state)");
  wp_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      const auto& t = doc.transducer;
      GroupWord g = element(doc, o.element);
      const bool bounded = wp_cmd->count("--depth") > 0 || !t.is_finite_state();
      if (!bounded) {
        auto r = word_problem_fs(t, g);
        if (r.trivial) {
          os << "result: trivial\n";
          os << "sections: " << r.certificate.sections.size() << "\n";
        } else {
          os << "result: nontrivial\n";
          os << "witness: " << letters(t.alphabet(), r.witness) << "\n";
          os << "image: " << letters(t.alphabet(), r.image) << "\n";
        }
        return kOk;
      }
      const std::size_t depth = wp_cmd->count("--depth") ? o.depth : 12;
      auto v = word_problem_bounded(t, g, depth);
      if (is_yes(v)) {
        os << "result: trivial\n";
        os << "sections: " << std::get<ClosureCertificate>(std::get<Yes>(v).certificate).sections.size() << "\n";
        return kOk;
      }
      if (const auto* n = std::get_if<No>(&v)) {
        os << "result: nontrivial\n";
        os << "witness: " << letters(t.alphabet(), n->witness) << "\n";
        os << "image: " << letters(t.alphabet(), n->image) << "\n";
        return kOk;
      }
      os << "result: unknown\n";
      os << "depth: " << depth << "\n";
      return kUnknown;
    };
  });

  auto* order_cmd = app.add_subcommand("order", "order of a group element");
  file(order_cmd);
  elem(order_cmd);
  budget(order_cmd);
  order_cmd->add_option("--conjugators", o.conjugators, "merge nodes by conjugators up to this length");
  order_cmd->add_flag("--graph", o.graph, "print the explored graph");
  order_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      OrderOptions opts{o.budget, true, o.conjugators};
      return report_order(os, doc.transducer, order(doc.transducer, element(doc, o.element), opts), o.graph);
    };
  });

  auto* orbit_cmd = app.add_subcommand("orbit", "orbit size of a constant ray");
  file(orbit_cmd);
  elem(orbit_cmd);
  orbit_cmd->add_option("--letter", o.letter, "letter a of the ray a^inf")->required();
  budget(orbit_cmd);
  orbit_cmd->add_flag("--graph", o.graph, "print the explored graph");
  orbit_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      const auto& t = doc.transducer;
      Letter a = t.alphabet().index(o.letter, "letter");
      return report_order(os, t, orbit_size_ray(t, element(doc, o.element), a, o.budget), o.graph);
    };
  });

  auto* mm_cmd = app.add_subcommand("mm", "two-counter machines");
  mm_cmd->require_subcommand(1);

  auto* run_cmd = mm_cmd->add_subcommand("run", "run a machine");
  file(run_cmd);
  run_cmd->add_option("--fuel", o.fuel, "step limit")->required();
  run_cmd->add_option("--m", o.m, "initial first counter");
  run_cmd->add_option("--n", o.n, "initial second counter");
  run_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto mm = parse_machine(read_file(o.file));
      auto r = minsky::run(mm, minsky::Config{mm.start(), o.m, o.n}, o.fuel);
      auto show = [&](const minsky::Config& c) {
        os << "state: " << mm.name(c.state) << "\n";
        os << "m: " << c.m << "\n";
        os << "n: " << c.n << "\n";
      };
      if (const auto* h = std::get_if<minsky::Halted>(&r)) {
        os << "result: halted\n";
        os << "steps: " << h->steps << "\n";
        show(h->config);
        return kOk;
      }
      os << "result: running\n";
      os << "steps: " << o.fuel << "\n";
      show(std::get<minsky::Running>(r).config);
      return kUnknown;
    };
  });

  auto* normalize_cmd = mm_cmd->add_subcommand("normalize", "rewrite over an instruction set");
  file(normalize_cmd);
  normalize_cmd->add_option("--target", o.target, "wp, order, orbit or a list such as I,VI,IX")->required();
  output(normalize_cmd, false);
  normalize_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto mm = parse_machine(read_file(o.file));
      auto norm = minsky::normalize(mm, minsky::parse_instruction_set(o.target));
      std::string text = serialize_machine(norm.machine);
      if (o.output.empty()) {
        os << text;
        return kOk;
      }
      save(o.output, text, os);
      os << "states: " << norm.machine.size() << "\n";
      os << "step_factor: " << norm.step_factor << "\n";
      return kOk;
    };
  });

  auto* compile_cmd = mm_cmd->add_subcommand("compile", "compile a machine into a transducer");
  file(compile_cmd);
  compile_cmd->add_option("--target", o.target, "wp, order or orbit")
      ->required()
      ->check(CLI::IsMember({"wp", "order", "orbit"}));
  output(compile_cmd, true);
  compile_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto mm = parse_machine(read_file(o.file));
      Compilation c = o.target == "wp" ? compile_wp(mm) : o.target == "order" ? compile_order(mm) : compile_orbit(mm);
      save(o.output, serialize_transducer(document_of(c)), os);
      summary(os, c.transducer);
      for (const auto& [name, w] : c.witnesses) os << "witness: " << name << " (" << w.size() << ")\n";
      return kOk;
    };
  });

  auto* contractify_cmd = app.add_subcommand("contractify", "contracting composition");
  file(contractify_cmd);
  output(contractify_cmd, true);
  contractify_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      Transducer k = contractify(doc.transducer);
      save(o.output, serialize_transducer(k), os);
      summary(os, k);
      return kOk;
    };
  });

  auto* nucleus_cmd = app.add_subcommand("nucleus", "nucleus of a contracting group");
  file(nucleus_cmd);
  budget(nucleus_cmd);
  nucleus_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      auto r = nucleus(doc.transducer, o.budget);
      os << "complete: " << yes_no(r.complete) << "\n";
      os << "size: " << r.nucleus.size() << "\n";
      os << "rounds: " << r.closure_depth << "\n";
      for (const auto& g : r.nucleus) os << "element: " << to_string(g, doc.transducer.states()) << "\n";
      return r.complete ? kOk : kUnknown;
    };
  });

  auto* nuclear_cmd = app.add_subcommand("nuclear-check", "is the state set the nucleus");
  file(nuclear_cmd);
  nuclear_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      const auto& t = doc.transducer;
      auto r = nuclear_check(t);
      os << "result: " << (r.nuclear ? "nuclear" : "not nuclear") << "\n";
      if (!r.nuclear) {
        os << "letter: " << t.alphabet().name(r.letter) << "\n";
        os << "pair: " << t.states().name(r.first) << " " << t.states().name(r.second) << "\n";
        os << "section: " << to_string(r.section, t.states()) << "\n";
      }
      return kOk;
    };
  });

  auto* nuclearize_cmd = app.add_subcommand("nuclearize", "add the nucleus and pass to a power alphabet");
  file(nuclearize_cmd);
  budget(nuclearize_cmd);
  output(nuclearize_cmd, true);
  nuclearize_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      auto r = nuclearize(doc.transducer, o.budget);
      save(o.output, serialize_transducer(r.transducer), os);
      summary(os, r.transducer);
      os << "block: " << r.block << "\n";
      os << "added_states: " << r.added_states << "\n";
      return kOk;
    };
  });

  auto* bound_cmd = app.add_subcommand("contraction-bound", "least N for the path contraction criterion");
  file(bound_cmd);
  bound_cmd->add_option("--max", o.depth, "largest N tried")->required();
  bound_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      auto n = path_contraction_bound(doc.transducer, o.depth);
      if (!n) {
        os << "result: none\n";
        return kUnknown;
      }
      os << "result: " << *n << "\n";
      return kOk;
    };
  });

  auto* tiles_cmd = app.add_subcommand("tiles", "Wang tiles of a finite-state transducer");
  file(tiles_cmd);
  output(tiles_cmd, true);
  tiles_cmd->add_option("--check", o.checks, "side pair and property, e.g. SW:complete");
  tiles_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto doc = load(o.file);
      Tileset ts = tileset_from_transducer(doc.transducer);
      std::vector<std::pair<std::string, PropertyCheck>> results;
      for (const auto& spec : o.checks) {
        auto colon = spec.find(':');
        if (colon != 2) throw InvalidArgument("check must look like SW:complete, got '" + spec + "'");
        const std::string prop = spec.substr(3);
        TileProperty p;
        if (prop == "complete")
          p = TileProperty::complete;
        else if (prop == "deterministic")
          p = TileProperty::deterministic;
        else
          throw InvalidArgument("unknown tile property '" + prop + "'");
        results.emplace_back(spec, check_tileset_property(ts, parse_side(spec[0]), parse_side(spec[1]), p));
      }
      save(o.output, export_tileset(ts), os);
      os << "colours: " << ts.colours.size() << "\n";
      os << "tiles: " << ts.tiles.size() << "\n";
      for (const auto& [spec, r] : results) {
        os << "check: " << spec << " " << yes_no(r.holds);
        if (r.counterexample)
          os << " (" << ts.colours[r.counterexample->first] << ", " << ts.colours[r.counterexample->second] << ": "
             << r.matches << " tiles)";
        os << "\n";
      }
      return kOk;
    };
  });

  auto* witness_cmd = app.add_subcommand("witness", "uniform commutator words of a machine");
  file(witness_cmd);
  witness_cmd->add_option("--n", o.witness_n, "y-block exponent")->required()->check(CLI::Range(0u, 24u));
  witness_cmd->callback([&] {
    handler = [&](std::ostream& os) {
      auto c = compile_wp(parse_machine(read_file(o.file)));
      GroupWord w = make_uniform_witness(c, o.witness_n);
      os << "length: " << w.size() << "\n";
      os << "word: " << to_string(w, c.transducer.states()) << "\n";
      return kOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  try {
    return handler(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace fra::cli
