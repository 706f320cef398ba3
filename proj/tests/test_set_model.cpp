#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "deltawb/set_repr.hpp"

using namespace deltawb;

namespace {

std::vector<int64_t> enumInts(const SetRepr& a, int64_t radius) {
  std::vector<int64_t> out;
  for (const GroupElement& g : a.enumerate(Window{radius})) out.push_back(g.intValue());
  std::sort(out.begin(), out.end());
  return out;
}

SetRepr evens() { return parseSetSpec("periodic p=2 pos={0} neg={0}"); }
SetRepr odds() { return parseSetSpec("periodic p=2 pos={1} neg={1}"); }
SetRepr zeroAndOdds() { return parseSetSpec("periodic p=2 pos={1} neg={1} m=1 add={0}"); }

EventuallyPeriodic randomRawEp(std::mt19937_64& rng) {
  EventuallyPeriodic ep;
  ep.modulus = std::uniform_int_distribution<int64_t>(1, 12)(rng);
  for (int64_t r = 0; r < ep.modulus; ++r) {
    if (rng() % 2) ep.posResidues.push_back(r);
    if (rng() % 2) ep.negResidues.push_back(r);
  }
  ep.tailStart = std::uniform_int_distribution<int64_t>(0, 10)(rng);
  std::uniform_int_distribution<int64_t> val(-30, 30);
  for (int i = 0; i < 3; ++i) {
    int64_t x = val(rng);
    ep.addExceptions.push_back(x);
  }
  std::sort(ep.addExceptions.begin(), ep.addExceptions.end());
  ep.addExceptions.erase(std::unique(ep.addExceptions.begin(), ep.addExceptions.end()),
                         ep.addExceptions.end());
  return ep;
}

}  // namespace

TEST_CASE("eventually periodic membership") {
  SetRepr a = zeroAndOdds();
  CHECK(a.contains(GroupElement::zOf(7)));
  CHECK(a.contains(GroupElement::zOf(0)));
  CHECK(a.contains(GroupElement::zOf(-13)));
  CHECK_FALSE(a.contains(GroupElement::zOf(4)));

  SetRepr p = SetRepr::generator("pow10");
  CHECK(p.contains(GroupElement::zOf(1000)));
  CHECK_FALSE(p.contains(GroupElement::zOf(1)));
  CHECK_FALSE(p.contains(GroupElement::zOf(-10)));
}

TEST_CASE("enumerate windows") {
  CHECK(enumInts(zeroAndOdds(), 5) == std::vector<int64_t>{-5, -3, -1, 0, 1, 3, 5});
  CHECK(enumInts(SetRepr::generator("pow10"), 10000) ==
        std::vector<int64_t>{10, 100, 1000, 10000});
  SetRepr f = parseSetSpec("finite {2,9}");
  CHECK(enumInts(f, 5) == std::vector<int64_t>{2});
}

TEST_CASE("generator corpus matches the staircase rules") {
  // pow10_plus_n: {10^n, 10^n + n}
  CHECK(enumInts(SetRepr::generator("pow10_plus_n"), 1100) ==
        std::vector<int64_t>{10, 11, 100, 102, 1000, 1003});
  // pow10_staircase offsets follow the triangular stream 1;1,2;1,2,3;...
  CHECK(enumInts(SetRepr::generator("pow10_staircase"), 20'000'000) ==
        std::vector<int64_t>{11, 101, 1002, 10001, 100002, 1000003, 10000001});
  // nabla_example pairs 10^k with the odd offsets 1,1,3,1,3,5,1,...
  CHECK(enumInts(SetRepr::generator("nabla_example"), 2'000'000) ==
        std::vector<int64_t>{0, 1, 10, 11, 100, 103, 1000, 1001, 10000, 10003, 100000, 100005,
                             1000000, 1000001});
}

TEST_CASE("normal form folds equivalent representations") {
  SetRepr a = parseSetSpec("periodic p=4 pos={0,2} neg={0,2}");
  CHECK(a.sameRepresentation(evens()));

  // tailStart plus patched exceptions normalizes away
  SetRepr b = parseSetSpec("periodic p=2 pos={0} neg={0} m=4 add={0,-2,2}");
  CHECK(b.sameRepresentation(evens()));

  SetRepr c = parseSetSpec("periodic p=1 pos={} neg={} add={3,1,2}");
  CHECK(c.describe() == "periodic p=1 pos={} neg={} add={1,2,3}");
}

TEST_CASE("normalization preserves extension on random representations") {
  std::mt19937_64 rng(20240701);
  for (int trial = 0; trial < 60; ++trial) {
    EventuallyPeriodic raw = randomRawEp(rng);
    EventuallyPeriodic norm = epNormalize(raw);
    for (int64_t x = -80; x <= 80; ++x) {
      CAPTURE(trial);
      CAPTURE(x);
      CHECK(raw.contains(x) == norm.contains(x));
    }
    for (int64_t x : {-100001, -4099, 4099, 100001}) {
      CHECK(raw.contains(x) == norm.contains(x));
    }
    CHECK(epNormalize(norm) == norm);
  }
}

TEST_CASE("window restriction invariant") {
  std::vector<SetRepr> corpus = {evens(), zeroAndOdds(), SetRepr::generator("pow10_plus_n"),
                                 parseSetSpec("union(gen pow10;periodic p=3 pos={1} neg={})")};
  for (const SetRepr& a : corpus) {
    auto big = enumInts(a, 300);
    auto small = enumInts(a, 120);
    std::vector<int64_t> restricted;
    for (int64_t x : big) {
      if (std::abs(x) <= 120) restricted.push_back(x);
    }
    CHECK(small == restricted);
  }
}

TEST_CASE("set algebra closed forms") {
  CHECK(translateSet(GroupElement::zOf(1), evens()).sameRepresentation(odds()));

  SetRepr z = productSet({GroupElement::zOf(0), GroupElement::zOf(1)}, evens());
  CHECK(z.sameRepresentation(allOfZ()));
  // windowed union oracle
  std::vector<int64_t> expect;
  for (int64_t x = -100; x <= 100; ++x) expect.push_back(x);
  CHECK(enumInts(z, 100) == expect);

  CHECK(inverseSet(zeroAndOdds()).sameRepresentation(zeroAndOdds()));
}

TEST_CASE("translate windowed consistency") {
  for (const SetRepr& a :
       {evens(), SetRepr::generator("pow10_plus_n"), zeroAndOdds()}) {
    for (int64_t g : {3, -7}) {
      SetRepr shifted = translateSet(GroupElement::zOf(g), a);
      std::vector<int64_t> viaEnum;
      for (int64_t x : enumInts(a, 150 + std::abs(g))) {
        if (std::abs(x + g) <= 150) viaEnum.push_back(x + g);
      }
      CHECK(enumInts(shifted, 150) == viaEnum);
    }
  }
}

TEST_CASE("double inverse enumerates identically") {
  for (const SetRepr& a : {SetRepr::generator("pow10"), zeroAndOdds(),
                            parseSetSpec("finite {1,-4,9}")}) {
    SetRepr twice = inverseSet(inverseSet(a));
    CHECK(enumInts(twice, 1000) == enumInts(a, 1000));
  }
}

TEST_CASE("symmetry certificates") {
  CHECK(isSymmetric(zeroAndOdds(), Window{100}).verdict == Verdict::Proven);
  CHECK(isSymmetric(evens(), Window{100}).verdict == Verdict::Proven);

  Certificate c = isSymmetric(SetRepr::generator("pow10"), Window{100});
  CHECK(c.verdict == Verdict::Refuted);
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->intValue() == -10);

  Certificate ev = isSymmetric(parseSetSpec("gen fg_xSy(a,a)"), Window{0});
  CHECK(ev.verdict == Verdict::Evidence);  // nothing inside an empty window
}

TEST_CASE("free-group generator sets") {
  SetRepr asb = parseSetSpec("gen fg_xSy(a,b)");
  CHECK(asb.group() == GroupTag::F2);
  CHECK(asb.contains(GroupElement::f2Of("ab")));
  CHECK(asb.contains(GroupElement::f2Of("aBab")));
  CHECK_FALSE(asb.contains(GroupElement::f2Of("ba")));
  CHECK_FALSE(asb.contains(GroupElement::identityOf(GroupTag::F2)));
  CHECK(asb.enumerate(Window{2}).size() == 1);  // just "ab"

  SetRepr asa = parseSetSpec("gen fg_xSy(a,a)");
  CHECK(asa.contains(GroupElement::f2Of("a")));  // single-letter convention
}

TEST_CASE("parse round trips") {
  for (const char* spec :
       {"periodic p=2 pos={0} neg={0}", "gen pow10_plus_n", "finite {1,2,3}",
        "union(gen pow10;gen pow10_staircase)", "translate 5 (gen pow10)",
        "finite {(1,0),(0,-2)}", "finite {a,ab,BA}", "inverse(gen pow10)"}) {
    SetRepr a = parseSetSpec(spec);
    SetRepr b = parseSetSpec(a.describe());
    CHECK(a.sameRepresentation(b));
  }
}

TEST_CASE("parse examples from the mini-format") {
  CHECK(parseSetSpec("periodic p=2 pos={0} neg={0}").sameRepresentation(evens()));
  SetRepr g = parseSetSpec("gen pow10_plus_n");
  CHECK(g.kind() == SetRepr::Kind::Enumerated);
  CHECK(enumInts(g, 20) == std::vector<int64_t>{10, 11});
  SetRepr f = parseSetSpec("finite {1,2,3}");
  CHECK(f.kind() == SetRepr::Kind::ExplicitFinite);
}

TEST_CASE("parse errors carry offsets") {
  CHECK_THROWS_AS(parseSetSpec("perodic p=2"), ParseError);
  CHECK_THROWS_AS(parseSetSpec("periodic pos={0}"), ParseError);
  CHECK_THROWS_AS(parseSetSpec("finite {1,2"), ParseError);
  CHECK_THROWS_AS(parseSetSpec("gen nope"), ParseError);
  CHECK_THROWS_AS(parseSetSpec("periodic p=2 pos={5} neg={}"), ParseError);
  CHECK_THROWS_AS(parseSetSpec("periodic p=2 pos={0} neg={} remove={1}"), ParseError);
  CHECK_THROWS_AS(parseSetSpec("finite {1} extra"), ParseError);
  try {
    parseSetSpec("finite {1,2");
  } catch (const ParseError& e) {
    CHECK(e.offset > 0);
  }
}

TEST_CASE("firstMembers probes beyond any window") {
  auto f = SetRepr::generator("pow10_plus_n").firstMembers(6);
  REQUIRE(f.has_value());
  std::vector<int64_t> got;
  for (const auto& g : *f) got.push_back(g.intValue());
  CHECK(got == std::vector<int64_t>{10, 11, 100, 102, 1000, 1003});
}

TEST_CASE("declared delta closures") {
  auto c = SetRepr::generator("nabla_example").deltaClosure();
  REQUIRE(c.has_value());
  CHECK(c->sameRepresentation(zeroAndOdds()));
  auto p = SetRepr::generator("pow10").deltaClosure();
  REQUIRE(p.has_value());
  CHECK(p->describe() == "periodic p=1 pos={} neg={} add={0}");
  CHECK_FALSE(parseSetSpec("union(gen pow10;gen pow10_staircase)").deltaClosure().has_value());
}
