#include <doctest.h>

#include "fra/error.hpp"
#include "fra/group_word.hpp"
#include "fra/io.hpp"
#include "fra/trace.hpp"
#include "fra/transducer.hpp"
#include "oracle.hpp"

using namespace fra;

namespace {

Transducer grigorchuk() { return parse_transducer(read_file(FRA_DATA_DIR "/grigorchuk.fra")).transducer; }

}  // namespace

TEST_CASE("symbol tables keep declaration order") {
  StateSet s({"a", "b", "e"}, {"e"});
  CHECK(s.size() == 3);
  CHECK(s.index("b") == 1);
  CHECK(s.is_identity(2));
  CHECK_FALSE(s.is_identity(0));
  CHECK(s.identity_states() == std::vector<StateId>{2});
  CHECK_FALSE(s.find("z").has_value());
  CHECK_THROWS_AS(s.index("z", "state"), UnknownSymbol);
  CHECK_THROWS_AS(s.add("a"), Error);
  CHECK_THROWS_AS(s.add(""), Error);
}

TEST_CASE("group words stay freely reduced") {
  const Factor a{0, false}, A{0, true}, b{1, false}, B{1, true};
  GroupWord w{a, b, B, A};
  CHECK(w.empty());

  GroupWord ab{a, b};
  CHECK((ab * ab.inverse()).empty());
  CHECK(ab.inverse() == GroupWord{B, A});
  CHECK(ab.power(3).size() == 6);
  CHECK(ab.power(-2) == ab.inverse().power(2));
  CHECK(ab.power(0).empty());
  CHECK(ab.rotated(1) == GroupWord{b, a});

  SUBCASE("commutator and conjugate") {
    GroupWord x = GroupWord::generator(0), y = GroupWord::generator(1);
    CHECK(commutator(x, y) == GroupWord{A, B, a, b});
    CHECK(conjugate(x, y) == GroupWord{B, a, b});
    CHECK(commutator(x, x).empty());
  }

  SUBCASE("shortlex") {
    CHECK(GroupWord{a} < GroupWord{a, b});
    CHECK(GroupWord{a, b} < GroupWord{b, a});
    CHECK(GroupWord{a} < GroupWord{A});
  }
}

TEST_CASE("to_string") {
  StateSet s({"x", "y"});
  CHECK(to_string(GroupWord{}, s) == "1");
  CHECK(to_string(GroupWord{{0, false}, {1, true}}, s) == "x y'");
}

TEST_CASE("transducer word() erases identity states") {
  auto t = grigorchuk();
  CHECK(t.word({"a", "e", "a"}) == t.word({"a", "a"}));
  CHECK(t.word({"a", "e", "a'"}).empty());
  CHECK(t.word({"b", "c'"}).size() == 2);
}

TEST_CASE("builder rejects a second assignment") {
  Alphabet A({"0", "1"});
  StateSet S({"s"});
  TransducerBuilder b(A, S, TransducerKind::finite_state);
  b.set(0, 0, {}, 1);
  CHECK_THROWS_AS(b.set(0, 0, GroupWord{}, 0), Error);
}

TEST_CASE("validate reports table problems") {
  Alphabet A({"0", "1"});
  StateSet S({"s", "e"}, {"e"});

  SUBCASE("missing cell") {
    TransducerBuilder b(A, S, TransducerKind::finite_state);
    b.set(0, 0, {}, 1);
    auto r = validate(b.build());
    REQUIRE_FALSE(r.ok());
    CHECK(r.problems.front().find("not total") != std::string::npos);
  }
  SUBCASE("not a permutation") {
    TransducerBuilder b(A, S, TransducerKind::finite_state);
    b.set(0, 0, {}, 1).set(1, 0, {}, 1);
    auto r = validate(b.build());
    REQUIRE_FALSE(r.ok());
    CHECK(r.problems.front().find("permutation") != std::string::npos);
  }
  SUBCASE("long output in a finite-state table") {
    TransducerBuilder b(A, S, TransducerKind::finite_state);
    b.set(0, 0, GroupWord{{0, false}, {0, false}}, 1).set(1, 0, {}, 0);
    CHECK_FALSE(validate(b.build()).ok());
  }
  SUBCASE("well formed") {
    TransducerBuilder b(A, S, TransducerKind::finite_state);
    b.set(0, 0, {}, 1).set(1, 0, GroupWord::generator(0), 0);
    CHECK(validate(b.build()).ok());
  }
}

TEST_CASE("trace on the Grigorchuk group") {
  auto t = grigorchuk();
  const Letter z = 0, o = 1;

  auto r = trace_letter(t, z, t.word({"b"}));
  CHECK(r.out_letter == z);
  CHECK(r == TraceResult{t.word({"a"}), z});
  CHECK(trace_letter(t, o, t.word({"b"})) == TraceResult{t.word({"c"}), o});
  CHECK(trace_letter(t, z, t.word({"a"})) == TraceResult{{}, o});

  // a b on 0110, worked by hand
  CHECK(act_word(t, t.word({"a", "b"}), {0, 1, 1, 0}) == Word{1, 1, 1, 0});
  CHECK(state_at(t, t.word({"a", "b"}), {0, 1, 1, 0}) == t.word({"a"}));
  CHECK(letter_permutation(t, t.word({"a"})) == std::vector<Letter>{1, 0});
}

TEST_CASE("trace agrees with the naive evaluator") {
  auto t = grigorchuk();
  for (auto g : {t.word({"a", "b"}), t.word({"b'", "d", "a"}), t.word({"c", "a", "d", "a", "b'"})})
    oracle::for_each_word(2, 6, [&](const Word& w) { CHECK(act_word(t, g, w) == oracle::act(t, g, w)); });
}

TEST_CASE("compose with a pass-through transducer keeps the action") {
  auto t = grigorchuk();
  // Ψ(p, s) = (s, p): every state hands itself on unchanged
  TransducerBuilder b(Alphabet({"p"}), t.states(), TransducerKind::finite_state);
  for (StateId s = 0; s < t.states().size(); ++s)
    if (!t.states().is_identity(s)) b.set(0, s, GroupWord::generator(s), 0);
  Transducer c = compose(t, b.build());
  CHECK(c.alphabet().size() == 2);
  CHECK(c.alphabet().name(1) == "1|p");
  CHECK(validate(c).ok());
  for (auto g : {t.word({"a", "b"}), t.word({"d", "a", "c'"})})
    oracle::for_each_word(2, 5, [&](const Word& w) { CHECK(act_word(c, c.word(g), w) == oracle::act(t, g, w)); });
}

TEST_CASE("expand_alphabet and block letters") {
  auto t = grigorchuk();
  Transducer t2 = expand_alphabet(t, 2);
  CHECK(t2.alphabet().size() == 4);
  CHECK(validate(t2).ok());
  const GroupWord g = t.word({"a", "b", "c"});
  oracle::for_each_word(2, 4, [&](const Word& w) {
    Word blocks{block_letter(t, {w[0], w[1]}), block_letter(t, {w[2], w[3]})};
    Word img = oracle::act(t, g, w);
    CHECK(act_word(t2, t2.word(g), blocks) ==
          Word{block_letter(t, {img[0], img[1]}), block_letter(t, {img[2], img[3]})});
  });
}
