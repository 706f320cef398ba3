#include <doctest.h>

#include <algorithm>

#include "deltawb/group.hpp"
#include "deltawb/schedule.hpp"

using namespace deltawb;

TEST_CASE("combine on the three groups") {
  CHECK(combine(GroupElement::zOf(2), GroupElement::zOf(3)) == GroupElement::zOf(5));
  CHECK(combine(GroupElement::f2Of("ab"), GroupElement::f2Of("Ba")) == GroupElement::f2Of("aa"));
  CHECK(combine(GroupElement::z2Of(1, 0), GroupElement::z2Of(0, -2)) ==
        GroupElement::z2Of(1, -2));
  CHECK_THROWS_AS(combine(GroupElement::zOf(1), GroupElement::f2Of("a")), std::invalid_argument);
}

TEST_CASE("invert") {
  CHECK(invert(GroupElement::zOf(5)) == GroupElement::zOf(-5));
  CHECK(invert(GroupElement::f2Of("aB")) == GroupElement::f2Of("bA"));
  for (GroupTag tag : {GroupTag::Z, GroupTag::Z2, GroupTag::F2}) {
    GroupElement e = GroupElement::identityOf(tag);
    CHECK(invert(e) == e);
  }
}

TEST_CASE("free-group words stay reduced") {
  GroupElement w = GroupElement::f2Of("abBA");
  CHECK(w.isIdentity());
  CHECK(combine(GroupElement::f2Of("ab"), GroupElement::f2Of("BA")).isIdentity());
  CHECK(GroupElement::f2Of("aA").wordValue().empty());
}

TEST_CASE("ball contents and order") {
  GroupContext z{GroupTag::Z};
  auto b = ball(z, 2);
  REQUIRE(b.size() == 5);
  CHECK(b[0] == GroupElement::zOf(0));
  CHECK(b[1] == GroupElement::zOf(-1));
  CHECK(b[2] == GroupElement::zOf(1));
  CHECK(b[3] == GroupElement::zOf(-2));
  CHECK(b[4] == GroupElement::zOf(2));

  CHECK(ball(GroupContext{GroupTag::F2}, 2).size() == 17);
  CHECK(ball(GroupContext{GroupTag::Z2}, 1).size() == 9);
}

TEST_CASE("ball sizes match closed forms") {
  for (int64_t r = 0; r <= 8; ++r) {
    CHECK(ball(GroupContext{GroupTag::Z}, r).size() == ballSize(GroupTag::Z, r));
    CHECK(ball(GroupContext{GroupTag::F2}, r).size() == ballSize(GroupTag::F2, r));
  }
  for (int64_t r = 0; r <= 5; ++r) {
    CHECK(ball(GroupContext{GroupTag::Z2}, r).size() == ballSize(GroupTag::Z2, r));
  }
}

TEST_CASE("group axioms hold exhaustively on ball(3)") {
  for (GroupTag tag : {GroupTag::Z, GroupTag::Z2, GroupTag::F2}) {
    GroupContext ctx{tag};
    auto b = ball(ctx, 3);
    GroupElement e = ctx.identity();
    for (const auto& g : b) {
      CHECK(combine(e, g) == g);
      CHECK(combine(g, e) == g);
      CHECK(combine(g, invert(g)) == e);
    }
    // associativity on every triple
    size_t violations = 0;
    for (const auto& a : b) {
      for (const auto& g : b) {
        for (const auto& h : b) {
          if (combine(combine(a, g), h) != combine(a, combine(g, h))) ++violations;
        }
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("canonical order is total and stable") {
  for (GroupTag tag : {GroupTag::Z, GroupTag::Z2, GroupTag::F2}) {
    auto b = ball(GroupContext{tag}, 3);
    auto sorted = b;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == b);  // enumeration is already canonically sorted
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == b);
    for (size_t i = 0; i + 1 < sorted.size(); ++i) {
      CHECK(sorted[i] < sorted[i + 1]);
    }
  }
}

TEST_CASE("element parse/str round trip") {
  for (const char* txt : {"0", "-17", "42"}) {
    CHECK(GroupElement::parse(GroupTag::Z, txt).str() == txt);
  }
  CHECK(GroupElement::parse(GroupTag::Z2, "(3,-4)").str() == "(3,-4)");
  CHECK(GroupElement::parse(GroupTag::F2, "abA").str() == "abA");
  CHECK(GroupElement::parse(GroupTag::F2, "e").str() == "e");
}

TEST_CASE("triangular schedule") {
  // displayed prefix: w1=x1, w2=x1, w3=x2, w4=x1, w5=x2, w6=x3, w7=x1
  int64_t expected[] = {1, 1, 2, 1, 2, 3, 1};
  for (int64_t i = 1; i <= 7; ++i) CHECK(scheduleIndex(i) == expected[i - 1]);
  CHECK(scheduleIndex(10) == 4);

  // every index j recurs once per block n >= j
  for (int64_t j = 1; j <= 6; ++j) {
    for (int64_t c = 1; c <= 5; ++c) {
      int64_t seen = 0;
      int64_t limit = (j + c) * (j + c + 1) / 2;
      for (int64_t i = 1; i <= limit; ++i) {
        if (scheduleIndex(i) == j) ++seen;
      }
      CHECK(seen >= c);
    }
  }
}
