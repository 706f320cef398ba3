#include <doctest.h>

#include <random>

#include "deltawb/cover.hpp"

using namespace deltawb;

namespace {

SetRepr evens() { return parseSetSpec("periodic p=2 pos={0} neg={0}"); }

std::vector<GroupElement> zElems(std::initializer_list<int64_t> xs) {
  std::vector<GroupElement> out;
  for (int64_t x : xs) out.push_back(GroupElement::zOf(x));
  return out;
}

}  // namespace

TEST_CASE("verify_cover exact outcomes") {
  CoverOutcome covers = verifyCover(zElems({0, 1}), evens(), Window{100});
  CHECK(covers.kind == CoverOutcome::Kind::Covers);
  CHECK(covers.provenance.exact);

  SetRepr zMinus5 = parseSetSpec("periodic p=1 pos={0} neg={0} remove={5}");
  CoverOutcome cof = verifyCover(zElems({0}), zMinus5, Window{100});
  REQUIRE(cof.kind == CoverOutcome::Kind::CofiniteWithResidual);
  REQUIRE(cof.residual.size() == 1);
  CHECK(cof.residual[0] == GroupElement::zOf(5));

  // {0,1} + pow10 misses 0 itself; the canonical scan finds it first.
  CoverOutcome fails = verifyCover(zElems({0, 1}), SetRepr::generator("pow10"), Window{1000});
  REQUIRE(fails.kind == CoverOutcome::Kind::FailsAt);
  CHECK(fails.failsAt == GroupElement::zOf(0));

  CHECK_THROWS_AS(verifyCover({}, evens(), Window{10}), std::invalid_argument);
}

TEST_CASE("delta_large_from_cofinite: same translates witness the derivation cover") {
  DeltaLargeResult r = deltaLargeFromCofinite(zElems({0, 1}), evens(), Window{100}, 10);
  REQUIRE(r.established());
  CHECK(r.cert->exact);
  CHECK(replayDeltaLargeCert(*r.cert, evens()));

  DeltaLargeResult whole = deltaLargeFromCofinite(zElems({0}), allOfZ(), Window{100}, 10);
  REQUIRE(whole.established());
  CHECK(whole.cert->exact);

  SetRepr thirds = parseSetSpec("periodic p=3 pos={0} neg={0}");
  DeltaLargeResult third = deltaLargeFromCofinite(zElems({0, 1, 2}), thirds, Window{100}, 10);
  REQUIRE(third.established());
  CHECK(third.cert->exact);
  CHECK(replayDeltaLargeCert(*third.cert, thirds));

  CHECK_THROWS_AS(deltaLargeFromCofinite(zElems({0}), SetRepr::generator("pow10"),
                                         Window{1000}, 10),
                  CoverNotEstablished);
}

TEST_CASE("lemma end-to-end on generated periodic sets") {
  std::mt19937_64 rng(90210);
  int done = 0;
  while (done < 15) {
    int64_t p = std::uniform_int_distribution<int64_t>(2, 8)(rng);
    std::vector<int64_t> residues;
    for (int64_t r = 0; r < p; ++r) {
      if (rng() % 2) residues.push_back(r);
    }
    if (residues.empty()) continue;
    EventuallyPeriodic ep;
    ep.modulus = p;
    ep.posResidues = residues;
    ep.negResidues = residues;
    SetRepr a = SetRepr::periodic(ep);
    // translates hitting every residue class
    std::vector<GroupElement> cover;
    std::vector<char> hit(p, 0);
    for (int64_t shift = 0; shift < p; ++shift) {
      bool useful = false;
      for (int64_t r : residues) {
        if (!hit[(r + shift) % p]) useful = true;
      }
      if (!useful) continue;
      cover.push_back(GroupElement::zOf(shift));
      for (int64_t r : residues) hit[(r + shift) % p] = 1;
      if (std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; })) break;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; })) continue;
    CoverOutcome outcome = verifyCover(cover, a, Window{100});
    REQUIRE(outcome.cofiniteOrBetter());
    DeltaLargeResult r = deltaLargeFromCofinite(cover, a, Window{100}, 10);
    REQUIRE(r.established());
    CHECK(r.cert->exact);
    ++done;
  }
}

TEST_CASE("maximal almost-disjoint greedy") {
  MaximalDisjointResult ev = maximalAlmostDisjoint(evens(), Window{100}, 10, 25);
  CHECK_FALSE(ev.exhausted);
  CHECK(ev.family == zElems({0, -1}));
  REQUIRE(ev.cert.has_value());
  CHECK(ev.cert->exact);

  MaximalDisjointResult whole = maximalAlmostDisjoint(allOfZ(), Window{50}, 10, 25);
  CHECK(whole.family == zElems({0}));
  REQUIRE(whole.cert.has_value());

  MaximalDisjointResult lac =
      maximalAlmostDisjoint(SetRepr::generator("pow10_plus_n"), Window{1'000'000}, 10, 25);
  CHECK(lac.exhausted);
  CHECK(lac.family.size() == 26);
  CHECK_FALSE(lac.cert.has_value());
}

TEST_CASE("maximal family members are pairwise almost disjoint") {
  MaximalDisjointResult r = maximalAlmostDisjoint(evens(), Window{80}, 10, 25);
  SetRepr d = deltaExact(evens());
  for (size_t i = 0; i < r.family.size(); ++i) {
    for (size_t j = i + 1; j < r.family.size(); ++j) {
      GroupElement shift = combine(invert(r.family[i]), r.family[j]);
      CHECK_FALSE(d.contains(shift));
    }
  }
}

TEST_CASE("cover_search") {
  auto w = coverSearch(evens(), 2, Window{100});
  REQUIRE(w.has_value());
  CHECK(w->cover == zElems({0, -1}));
  CHECK(verifyCover(w->cover, evens(), Window{100}).cofiniteOrBetter());

  auto whole = coverSearch(allOfZ(), 2, Window{100});
  REQUIRE(whole.has_value());
  CHECK(whole->cover == zElems({0}));

  auto none = coverSearch(SetRepr::generator("pow10"), 3, Window{1000});
  CHECK_FALSE(none.has_value());

  CHECK_THROWS_AS(coverSearch(evens(), 9, Window{100}), std::invalid_argument);
}
