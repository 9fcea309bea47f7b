#include <doctest.h>

#include <random>

#include "fra/action.hpp"
#include "fra/compile.hpp"
#include "fra/contract.hpp"
#include "fra/io.hpp"
#include "fra/trace.hpp"
#include "oracle.hpp"

using namespace fra;

namespace {

Transducer load(const char* name) { return parse_transducer(read_file(std::string(FRA_DATA_DIR "/") + name)).transducer; }

Transducer identity_transducer() {
  return parse_transducer("alphabet: 0 1\nstates: e\nidentity: e\n").transducer;
}

Compilation tiny() { return compile_order(parse_machine(read_file(FRA_DATA_DIR "/tiny.mm"))); }

bool in_report(const Transducer& t, const NucleusReport& r, const GroupWord& g) {
  for (const auto& n : r.nucleus)
    if (word_problem_fs(t, g * n.inverse()).trivial) return true;
  return false;
}

// raw (unreduced) output length along a path of the dual Moore diagram
std::optional<std::size_t> path_output_length(const Transducer& t, Letter a, const GroupWord& w) {
  std::size_t len = 0;
  for (const auto& f : w.factors()) {
    if (!f.inverse) {
      const auto& tr = t.at(a, f.state);
      len += tr.output.size();
      a = tr.target;
    } else {
      auto pre = t.preimage(f.state, a);
      if (!pre) return std::nullopt;
      len += t.at(*pre, f.state).output.size();
      a = *pre;
    }
  }
  return len;
}

}  // namespace

TEST_CASE("auxiliary transducers") {
  auto c = tiny();
  auto aux = auxiliary_transducers(c.transducer.states());
  REQUIRE_FALSE(aux.phi.empty());
  REQUIRE(aux.phi.size() == aux.s.size());
  const auto& phi1 = aux.phi[0];
  const StateId s1 = aux.s[0];
  const StateId x = c.transducer.states().index("x");
  CHECK(phi1.at(0, s1) == Transition{GroupWord::generator(s1), 1});
  CHECK(phi1.at(1, s1) == Transition{{}, 0});
  CHECK(phi1.at(1, x) == Transition{{}, 1});
  CHECK(phi1.at(0, x) == Transition{GroupWord::generator(x), 0});

  const auto& p0 = aux.phi0;
  CHECK(p0.alphabet().size() == 8);
  CHECK(p0.at(p0.alphabet().index("000"), x) ==
        Transition{GroupWord::generator(x), p0.alphabet().index("100")});
  CHECK(p0.at(p0.alphabet().index("100"), x) == Transition{{}, p0.alphabet().index("000")});
  const StateId y = c.transducer.states().index("y");
  CHECK(p0.at(p0.alphabet().index("010"), y) == Transition{{}, p0.alphabet().index("000")});
  CHECK(p0.at(p0.alphabet().index("001"), s1) == Transition{{}, p0.alphabet().index("000")});
  CHECK(p0.at(p0.alphabet().index("000"), s1) ==
        Transition{GroupWord::generator(s1), p0.alphabet().index("001")});
}

TEST_CASE("only s_i^-a w s_i^b paths keep their length") {
  auto c = tiny();
  auto aux = auxiliary_transducers(c.transducer.states());
  const auto& phi = aux.phi[0];
  const StateId si = aux.s[0];
  std::vector<Factor> gens;
  for (StateId s = 0; s < phi.states().size(); ++s)
    if (!phi.states().is_identity(s)) {
      gens.push_back({s, false});
      gens.push_back({s, true});
    }
  std::size_t tested = 0;
  std::function<void(std::vector<Factor>&)> visit = [&](std::vector<Factor>& w) {
    if (!w.empty()) {
      GroupWord g(w);
      bool preserving = false;
      for (Letter a = 0; a < 2; ++a) {
        auto len = path_output_length(phi, a, g);
        if (len && *len == g.size()) preserving = true;
      }
      std::size_t lo = (w.front() == Factor{si, true}) ? 1 : 0;
      std::size_t hi = (w.size() > lo && w.back() == Factor{si, false}) ? w.size() - 1 : w.size();
      bool shape = true;
      for (std::size_t i = lo; i < hi; ++i) shape = shape && w[i].state != si;
      CHECK(preserving == shape);
      ++tested;
    }
    if (w.size() == 5) return;
    for (const auto& f : gens) {
      if (!w.empty() && w.back().cancels(f)) continue;
      w.push_back(f);
      visit(w);
      w.pop_back();
    }
  };
  std::vector<Factor> w;
  visit(w);
  CHECK(tested > 1000);
}

TEST_CASE("contractify") {
  auto c = tiny();
  Transducer k = contractify(c.transducer);
  const std::size_t ell = auxiliary_transducers(c.transducer.states()).s.size();
  CHECK(k.alphabet().size() == c.transducer.alphabet().size() * (std::size_t{1} << (ell + 3)));
  CHECK(k.is_finite_state());
  CHECK(validate(k).ok());

  auto report = check_power_relation(c.transducer, k);
  CHECK(report.checked > 0);
  CHECK(report.tails > 0);
  CHECK(report.failures.empty());
  CHECK(report.ok());

  // needs commuting x and y
  auto bad = parse_transducer(
                 "alphabet: 0 1\nstates: x y s e\nidentity: e\n"
                 "x , 0 -> - , 1\nx , 1 -> - , 0\ny , 0 -> y , 0\ny , 1 -> x , 1\ns , 0 -> - , 0\ns , 1 -> - , 1\n")
                 .transducer;
  REQUIRE_FALSE(word_problem_fs(bad, bad.word({"x'", "y'", "x", "y"})).trivial);
  CHECK_THROWS(contractify(bad));
}

TEST_CASE("nucleus") {
  auto g = load("grigorchuk.fra");
  auto rg = nucleus(g, 100000);
  CHECK(rg.complete);
  CHECK(rg.nucleus.size() == 5);
  for (auto names : {std::initializer_list<std::string_view>{"a"}, {"b"}, {"c"}, {"d"}})
    CHECK(in_report(g, rg, g.word(names)));
  CHECK(in_report(g, rg, {}));

  auto o = load("odometer.fra");
  auto ro = nucleus(o, 100000);
  CHECK(ro.complete);
  CHECK(ro.nucleus.size() == 3);
  CHECK(in_report(o, ro, o.word({"t'"})));

  auto id = nucleus(identity_transducer(), 100);
  CHECK(id.complete);
  CHECK(id.nucleus.size() == 1);

  // closed under sections
  for (const auto* p : {&g, &o}) {
    auto r = nucleus(*p, 100000);
    for (const auto& n : r.nucleus)
      for (Letter a = 0; a < p->alphabet().size(); ++a) CHECK(in_report(*p, r, state_at(*p, n, {a})));
  }

  // section oracle: long words of tau powers end up in the nucleus at depth 8
  for (int k = -4; k <= 4; ++k)
    oracle::for_each_word(2, 8, [&](const Word& w) { CHECK(in_report(o, ro, state_at(o, o.word({"t"}).power(k), w))); });

  CHECK_FALSE(nucleus(g, 2).complete);
}

TEST_CASE("nuclear check") {
  CHECK(is_nuclear(identity_transducer()));
  CHECK(is_nuclear(load("grigorchuk.fra")));
  CHECK(is_nuclear(load("odometer.fra")));

  // definitional oracle on Grigorchuk: every pair section is a single state
  auto g = load("grigorchuk.fra");
  for (StateId s1 = 0; s1 < 5; ++s1)
    for (StateId s2 = 0; s2 < 5; ++s2)
      for (Letter a = 0; a < 2; ++a) {
        GroupWord sec = state_at(g, g.word(GroupWord{{s1, false}, {s2, false}}), {a});
        bool single = false;
        for (StateId s3 = 0; s3 < 5; ++s3)
          single = single || word_problem_fs(g, sec * g.word(GroupWord{{s3, true}})).trivial;
        CHECK(single);
      }

  // the same oracle against the library on compiled and contracted transducers
  auto definitional = [](const Transducer& t) {
    const std::size_t ns = t.states().size();
    for (StateId s1 = 0; s1 < ns; ++s1)
      for (StateId s2 = 0; s2 < ns; ++s2)
        for (Letter a = 0; a < t.alphabet().size(); ++a) {
          GroupWord sec = state_at(t, t.word(GroupWord{{s1, false}, {s2, false}}), {a});
          bool single = false;
          for (StateId s3 = 0; s3 < ns && !single; ++s3)
            single = word_problem_fs(t, sec * t.word(GroupWord{{s3, true}})).trivial;
          if (!single) return false;
        }
    return true;
  };
  const Transducer compiled = tiny().transducer;
  const Transducer k = contractify(compiled);
  for (const auto* t : {&compiled, &k}) {
    auto r = nuclear_check(*t);
    CHECK(r.nuclear == definitional(*t));
    if (!r.nuclear) {
      GroupWord sec = state_at(*t, t->word(GroupWord{{r.first, false}, {r.second, false}}), {r.letter});
      CHECK(word_problem_fs(*t, sec * r.section.inverse()).trivial);
    }
  }
  CHECK_FALSE(is_nuclear(k));
}

TEST_CASE("nuclearize") {
  auto o = load("odometer.fra");
  auto r = nuclearize(o, 4);
  CHECK(is_nuclear(r.transducer));
  CHECK(r.transducer.states().size() == 3);
  CHECK(r.block >= 1);

  auto g = load("grigorchuk.fra");
  auto rg = nuclearize(g, 2);
  CHECK(rg.block == 1);
  CHECK(rg.added_states == 0);

  auto k = contractify(tiny().transducer);
  auto rk = nuclearize(k, 3);
  CHECK(is_nuclear(rk.transducer));
  CHECK(validate(rk.transducer).ok());
}

TEST_CASE("path contraction bound") {
  auto o = load("odometer.fra");
  CHECK(path_contraction_bound(o, 10) == std::optional<std::size_t>{2});
  CHECK_FALSE(path_contraction_bound(load("grigorchuk.fra"), 10).has_value());
  CHECK(path_contraction_bound(identity_transducer(), 5) == std::optional<std::size_t>{1});

  // empirical contraction for the odometer, N = 2
  std::mt19937 rng(11);
  for (int k = 0; k < 100; ++k) {
    GroupWord w;
    const std::size_t len = 1 + rng() % 20;
    for (std::size_t i = 0; i < len; ++i) w.push_back({0, rng() % 2 == 1});
    for (Letter a = 0; a < 2; ++a) CHECK(state_at(o, w, {a}).size() * 2 <= w.size() + 2);
  }
}
