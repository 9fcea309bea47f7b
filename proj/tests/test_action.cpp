#include <doctest.h>

#include "fra/action.hpp"
#include "fra/error.hpp"
#include "fra/io.hpp"
#include "fra/trace.hpp"
#include "oracle.hpp"

using namespace fra;

namespace {

Transducer load(const char* name) { return parse_transducer(read_file(std::string(FRA_DATA_DIR "/") + name)).transducer; }

}  // namespace

TEST_CASE("rays") {
  Ray r{{1, 0}, {0, 1, 0, 1}};
  Ray c = canonical(r);
  CHECK(c.preperiod == Word{1, 0});
  CHECK(c.period == Word{0, 1});
  CHECK(canonical(Ray{{1, 0, 1}, {0, 1}}) == Ray{{}, {1, 0}});
  CHECK(ray_letter(r, 0) == 1);
  CHECK(ray_letter(r, 5) == 1);
  CHECK(ray_prefix(r, 6) == ray_prefix(c, 6));
  CHECK(canonical(constant_ray(1)) == Ray{{}, {1}});
  CHECK(canonical(Ray{{1, 1, 1}, {1, 1}}) == constant_ray(1));
}

TEST_CASE("word problem, Grigorchuk") {
  auto t = load("grigorchuk.fra");
  for (auto names : {std::initializer_list<std::string_view>{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"},
                     {"b", "c", "d"}}) {
    GroupWord g = t.word(names);
    auto r = word_problem_fs(t, g);
    CHECK(r.trivial);
    CHECK(verify_closure(t, g, r.certificate));
    CHECK(oracle::acts_trivially(t, g, 8));
  }

  auto ab = word_problem_fs(t, t.word({"a", "b"}));
  CHECK_FALSE(ab.trivial);
  CHECK(ab.witness == Word{0});
  CHECK(ab.image == Word{1});

  // b moves nothing of length 1; shortest moved words start with 1
  auto b = word_problem_fs(t, t.word({"b"}));
  CHECK_FALSE(b.trivial);
  CHECK(oracle::act(t, t.word({"b"}), b.witness) == b.image);
  CHECK(b.image != b.witness);
  CHECK(oracle::acts_trivially(t, t.word({"b"}), b.witness.size() - 1));
}

TEST_CASE("word problem refuses asynchronous tables") {
  auto t = parse_transducer(
               "alphabet: 0 1\nstates: s\nkind: asynchronous\ns , 0 -> s s , 1\ns , 1 -> - , 0\n")
               .transducer;
  CHECK_THROWS_AS(word_problem_fs(t, t.word({"s"})), InvalidArgument);
  CHECK_THROWS_AS(act_ray(t, t.word({"s"}), constant_ray(0)), InvalidArgument);
}

TEST_CASE("bounded word problem") {
  auto t = load("grigorchuk.fra");
  CHECK(is_yes(word_problem_bounded(t, {}, 0)));
  CHECK(is_yes(word_problem_bounded(t, t.word({"b", "c", "d"}), 6)));

  auto v = word_problem_bounded(t, t.word({"a", "b"}), 3);
  REQUIRE(is_no(v));
  CHECK(std::get<No>(v).witness == Word{0});
  CHECK(verify_word_verdict(t, t.word({"a", "b"}), v));

  // depth 0 cannot see anything move
  CHECK_FALSE(is_no(word_problem_bounded(t, t.word({"a"}), 0)));
}

TEST_CASE("act_ray and is_fixed_ray") {
  auto t = load("grigorchuk.fra");
  const GroupWord a = t.word({"a"});
  CHECK(act_ray(t, a, constant_ray(1)) == Ray{{0}, {1}});
  CHECK(act_ray(t, t.word({"b"}), constant_ray(1)) == constant_ray(1));

  auto v = is_fixed_ray(t, a, constant_ray(1), 100);
  REQUIRE(is_no(v));
  CHECK(std::get<No>(v).witness == Word{1});
  CHECK(verify_ray_verdict(t, a, constant_ray(1), v));

  CHECK(is_yes(is_fixed_ray(t, {}, Ray{{0}, {1, 0}}, 10)));

  auto y = is_fixed_ray(t, t.word({"b"}), constant_ray(1), 100);
  REQUIRE(is_yes(y));
  CHECK(verify_ray_verdict(t, t.word({"b"}), constant_ray(1), y));

  // act_ray agrees with act_word on prefixes
  for (auto g : {t.word({"a", "b"}), t.word({"c", "a", "d"})})
    for (Ray r : {Ray{{0, 1}, {1}}, Ray{{}, {0, 1, 1}}}) {
      Ray img = act_ray(t, g, r);
      const std::size_t n = 3 * (img.preperiod.size() + img.period.size()) + 3;
      CHECK(ray_prefix(img, n) == oracle::act(t, g, ray_prefix(r, n)));
    }
}

TEST_CASE("verifiers reject forged certificates") {
  auto t = load("grigorchuk.fra");
  const GroupWord ab = t.word({"a", "b"});
  CHECK_FALSE(verify_moved(t, ab, No{{1}, {1}}));
  CHECK_FALSE(verify_closure(t, ab, ClosureCertificate{{ab}}));
  CHECK_FALSE(verify_word_verdict(t, ab, Yes{ClosureCertificate{{ab}}}));
  CHECK_FALSE(verify_recurrence(t, t.word({"a"}), constant_ray(1), RecurrenceCertificate{0, 1, t.word({"a"})}));
}

TEST_CASE("odometer") {
  auto t = load("odometer.fra");
  const GroupWord tau = t.word({"t"});
  // binary increment, least significant letter first
  CHECK(oracle::act(t, tau, {1, 1, 0}) == Word{0, 0, 1});
  CHECK(act_word(t, tau, {1, 1, 0}) == Word{0, 0, 1});
  CHECK(act_ray(t, tau, constant_ray(1)) == constant_ray(0));
  CHECK_FALSE(word_problem_fs(t, tau.power(8)).trivial);
}
