#include "deltawb/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace deltawb {
namespace {

bool isLetter(char c) { return c == 'a' || c == 'A' || c == 'b' || c == 'B'; }

char inverseLetter(char c) {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    case 'B': return 'b';
  }
  throw std::invalid_argument("not a free-group letter");
}

int letterRank(char c) {
  switch (c) {
    case 'a': return 0;
    case 'A': return 1;
    case 'b': return 2;
    case 'B': return 3;
  }
  throw std::invalid_argument("not a free-group letter");
}

std::string reduceWord(std::string_view letters) {
  std::string out;
  out.reserve(letters.size());
  for (char c : letters) {
    if (!isLetter(c)) throw std::invalid_argument("invalid free-group letter in word");
    if (!out.empty() && out.back() == inverseLetter(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

void requireSameGroup(const GroupElement& g, const GroupElement& h) {
  if (g.tag() != h.tag()) {
    throw std::invalid_argument("group elements belong to different groups");
  }
}

constexpr uint64_t kMaxBallElements = 8'000'000;

}  // namespace

std::string groupName(GroupTag tag) {
  switch (tag) {
    case GroupTag::Z: return "Z";
    case GroupTag::Z2: return "Z2";
    case GroupTag::F2: return "F2";
  }
  return "?";
}

GroupTag groupFromName(std::string_view name) {
  if (name == "Z") return GroupTag::Z;
  if (name == "Z2") return GroupTag::Z2;
  if (name == "F2") return GroupTag::F2;
  throw std::invalid_argument("unknown group tag: " + std::string(name));
}

GroupElement GroupElement::zOf(int64_t v) {
  GroupElement g;
  g.tag_ = GroupTag::Z;
  g.a_ = v;
  return g;
}

GroupElement GroupElement::z2Of(int64_t x, int64_t y) {
  GroupElement g;
  g.tag_ = GroupTag::Z2;
  g.a_ = x;
  g.b_ = y;
  return g;
}

GroupElement GroupElement::f2Of(std::string_view letters) {
  GroupElement g;
  g.tag_ = GroupTag::F2;
  g.word_ = reduceWord(letters);
  return g;
}

GroupElement GroupElement::identityOf(GroupTag tag) {
  switch (tag) {
    case GroupTag::Z: return zOf(0);
    case GroupTag::Z2: return z2Of(0, 0);
    case GroupTag::F2: return f2Of("");
  }
  throw std::invalid_argument("bad group tag");
}

int64_t GroupElement::intValue() const {
  if (tag_ != GroupTag::Z) throw std::invalid_argument("not a Z element");
  return a_;
}

std::pair<int64_t, int64_t> GroupElement::pairValue() const {
  if (tag_ != GroupTag::Z2) throw std::invalid_argument("not a Z2 element");
  return {a_, b_};
}

const std::string& GroupElement::wordValue() const {
  if (tag_ != GroupTag::F2) throw std::invalid_argument("not an F2 element");
  return word_;
}

bool GroupElement::isIdentity() const {
  switch (tag_) {
    case GroupTag::Z: return a_ == 0;
    case GroupTag::Z2: return a_ == 0 && b_ == 0;
    case GroupTag::F2: return word_.empty();
  }
  return false;
}

int64_t GroupElement::norm() const {
  switch (tag_) {
    case GroupTag::Z: return std::abs(a_);
    case GroupTag::Z2: return std::max(std::abs(a_), std::abs(b_));
    case GroupTag::F2: return static_cast<int64_t>(word_.size());
  }
  return 0;
}

std::string GroupElement::str() const {
  switch (tag_) {
    case GroupTag::Z: return std::to_string(a_);
    case GroupTag::Z2: return "(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    case GroupTag::F2: return word_.empty() ? "e" : word_;
  }
  return "?";
}

GroupElement GroupElement::parse(GroupTag tag, std::string_view text) {
  switch (tag) {
    case GroupTag::Z: {
      size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(std::string(text), &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad integer element: " + std::string(text));
      }
      if (pos != text.size()) throw std::invalid_argument("bad integer element: " + std::string(text));
      return zOf(v);
    }
    case GroupTag::Z2: {
      if (text.size() < 5 || text.front() != '(' || text.back() != ')') {
        throw std::invalid_argument("bad Z2 element, expected (x,y): " + std::string(text));
      }
      auto body = std::string(text.substr(1, text.size() - 2));
      auto comma = body.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("bad Z2 element: " + std::string(text));
      return z2Of(std::stoll(body.substr(0, comma)), std::stoll(body.substr(comma + 1)));
    }
    case GroupTag::F2: {
      if (text == "e") return f2Of("");
      return f2Of(text);
    }
  }
  throw std::invalid_argument("bad group tag");
}

bool GroupElement::operator==(const GroupElement& other) const {
  if (tag_ != other.tag_) return false;
  switch (tag_) {
    case GroupTag::Z: return a_ == other.a_;
    case GroupTag::Z2: return a_ == other.a_ && b_ == other.b_;
    case GroupTag::F2: return word_ == other.word_;
  }
  return false;
}

bool GroupElement::operator<(const GroupElement& other) const {
  requireSameGroup(*this, other);
  switch (tag_) {
    case GroupTag::Z: {
      int64_t na = std::abs(a_), nb = std::abs(other.a_);
      if (na != nb) return na < nb;
      return a_ < other.a_;  // within a shell the negative comes first
    }
    case GroupTag::Z2: {
      int64_t na = norm(), nb = other.norm();
      if (na != nb) return na < nb;
      if (a_ != other.a_) return a_ < other.a_;
      return b_ < other.b_;
    }
    case GroupTag::F2: {
      if (word_.size() != other.word_.size()) return word_.size() < other.word_.size();
      for (size_t i = 0; i < word_.size(); ++i) {
        int ra = letterRank(word_[i]), rb = letterRank(other.word_[i]);
        if (ra != rb) return ra < rb;
      }
      return false;
    }
  }
  return false;
}

size_t GroupElementHash::operator()(const GroupElement& g) const {
  size_t h = std::hash<int>()(static_cast<int>(g.tag()));
  auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  switch (g.tag()) {
    case GroupTag::Z:
      mix(std::hash<int64_t>()(g.intValue()));
      break;
    case GroupTag::Z2: {
      auto [x, y] = g.pairValue();
      mix(std::hash<int64_t>()(x));
      mix(std::hash<int64_t>()(y));
      break;
    }
    case GroupTag::F2:
      mix(std::hash<std::string>()(g.wordValue()));
      break;
  }
  return h;
}

GroupElement combine(const GroupElement& g, const GroupElement& h) {
  requireSameGroup(g, h);
  switch (g.tag()) {
    case GroupTag::Z: return GroupElement::zOf(g.intValue() + h.intValue());
    case GroupTag::Z2: {
      auto [ax, ay] = g.pairValue();
      auto [bx, by] = h.pairValue();
      return GroupElement::z2Of(ax + bx, ay + by);
    }
    case GroupTag::F2: {
      std::string w = g.wordValue();
      for (char c : h.wordValue()) {
        if (!w.empty() && w.back() == inverseLetter(c)) {
          w.pop_back();
        } else {
          w.push_back(c);
        }
      }
      return GroupElement::f2Of(w);
    }
  }
  throw std::invalid_argument("bad group tag");
}

GroupElement invert(const GroupElement& g) {
  switch (g.tag()) {
    case GroupTag::Z: return GroupElement::zOf(-g.intValue());
    case GroupTag::Z2: {
      auto [x, y] = g.pairValue();
      return GroupElement::z2Of(-x, -y);
    }
    case GroupTag::F2: {
      const std::string& w = g.wordValue();
      std::string out(w.rbegin(), w.rend());
      for (char& c : out) c = inverseLetter(c);
      return GroupElement::f2Of(out);
    }
  }
  throw std::invalid_argument("bad group tag");
}

std::vector<GroupElement> GroupContext::generators() const {
  switch (tag) {
    case GroupTag::Z: return {GroupElement::zOf(1)};
    case GroupTag::Z2: return {GroupElement::z2Of(1, 0), GroupElement::z2Of(0, 1)};
    case GroupTag::F2: return {GroupElement::f2Of("a"), GroupElement::f2Of("b")};
  }
  throw std::invalid_argument("bad group tag");
}

uint64_t ballSize(GroupTag tag, int64_t radius) {
  if (radius < 0) throw std::invalid_argument("negative ball radius");
  uint64_t r = static_cast<uint64_t>(radius);
  switch (tag) {
    case GroupTag::Z: return 2 * r + 1;
    case GroupTag::Z2: return (2 * r + 1) * (2 * r + 1);
    case GroupTag::F2: {
      // 4 * 3^(k-1) reduced words of length k; total 1 + 2(3^R - 1).
      uint64_t pow3 = 1;
      for (uint64_t i = 0; i < r; ++i) {
        if (pow3 > (1ull << 40)) throw std::length_error("free-group ball too large");
        pow3 *= 3;
      }
      return 1 + 2 * (pow3 - 1);
    }
  }
  throw std::invalid_argument("bad group tag");
}

std::vector<GroupElement> ball(const GroupContext& ctx, int64_t radius) {
  if (radius < 0) throw std::invalid_argument("negative ball radius");
  uint64_t size = ballSize(ctx.tag, radius);
  if (size > kMaxBallElements) throw std::length_error("ball too large to enumerate");

  std::vector<GroupElement> out;
  out.reserve(size);
  switch (ctx.tag) {
    case GroupTag::Z:
      out.push_back(GroupElement::zOf(0));
      for (int64_t r = 1; r <= radius; ++r) {
        out.push_back(GroupElement::zOf(-r));
        out.push_back(GroupElement::zOf(r));
      }
      break;
    case GroupTag::Z2:
      for (int64_t x = -radius; x <= radius; ++x) {
        for (int64_t y = -radius; y <= radius; ++y) {
          out.push_back(GroupElement::z2Of(x, y));
        }
      }
      std::sort(out.begin(), out.end());
      break;
    case GroupTag::F2: {
      const char letters[4] = {'a', 'A', 'b', 'B'};
      std::vector<std::string> current = {""};
      out.push_back(GroupElement::f2Of(""));
      for (int64_t len = 1; len <= radius; ++len) {
        std::vector<std::string> next;
        next.reserve(current.size() * 3 + 1);
        for (const std::string& w : current) {
          for (char c : letters) {
            if (!w.empty() && w.back() == inverseLetter(c)) continue;
            next.push_back(w + c);
            out.push_back(GroupElement::f2Of(next.back()));
          }
        }
        current = std::move(next);
      }
      break;
    }
  }
  return out;
}

}  // namespace deltawb
