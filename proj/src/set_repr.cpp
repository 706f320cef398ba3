#include "deltawb/set_repr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "deltawb/schedule.hpp"

namespace deltawb {
namespace {

const std::array<int64_t, 19> kPow10 = [] {
  std::array<int64_t, 19> t{};
  t[0] = 1;
  for (size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * 10;
  return t;
}();

// floor(log10(x)) for x >= 1
int floorLog10(int64_t x) {
  int k = 0;
  while (k + 1 < static_cast<int>(kPow10.size()) && kPow10[k + 1] <= x) ++k;
  return k;
}

// Offset paired with 10^k in the two staircase generators. Both follow
// the triangular index stream, so every offset value recurs infinitely
// often while each concrete difference appears only finitely often.
int64_t staircaseOffset(int64_t i) { return scheduleIndex(i); }
int64_t nablaOffset(int64_t k) { return 2 * scheduleIndex(k + 1) - 1; }

void sortCanonical(std::vector<GroupElement>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

EventuallyPeriodic epFromFinite(const std::vector<GroupElement>& elems) {
  EventuallyPeriodic ep;
  for (const GroupElement& g : elems) ep.addExceptions.push_back(g.intValue());
  std::sort(ep.addExceptions.begin(), ep.addExceptions.end());
  return ep;
}

}  // namespace

// ---------------------------------------------------------------------------
// Built-in generators

namespace {

struct Builtin {
  std::string name;
  GroupTag group;
  bool (*contains)(const GroupElement&);
  std::vector<GroupElement> (*enumerate)(int64_t radius);
  std::vector<GroupElement> (*firstMembers)(size_t count);
  std::optional<EventuallyPeriodic> deltaClosure;
};

bool pow10Contains(const GroupElement& g) {
  int64_t x = g.intValue();
  if (x < 10) return false;
  return x == kPow10[floorLog10(x)];
}

std::vector<GroupElement> pow10Enumerate(int64_t radius) {
  std::vector<GroupElement> out;
  for (int n = 1; n < static_cast<int>(kPow10.size()) && kPow10[n] <= radius; ++n) {
    out.push_back(GroupElement::zOf(kPow10[n]));
  }
  return out;
}

std::vector<GroupElement> pow10First(size_t count) {
  std::vector<GroupElement> out;
  for (size_t n = 1; n <= count && n < kPow10.size(); ++n) {
    out.push_back(GroupElement::zOf(kPow10[n]));
  }
  return out;
}

bool pow10PlusNContains(const GroupElement& g) {
  int64_t x = g.intValue();
  if (x < 10) return false;
  int k = floorLog10(x);
  return x == kPow10[k] || x == kPow10[k] + k;
}

std::vector<GroupElement> pow10PlusNEnumerate(int64_t radius) {
  std::vector<GroupElement> out;
  for (int n = 1; n < static_cast<int>(kPow10.size()); ++n) {
    if (kPow10[n] <= radius) out.push_back(GroupElement::zOf(kPow10[n]));
    if (kPow10[n] + n <= radius) out.push_back(GroupElement::zOf(kPow10[n] + n));
  }
  sortCanonical(out);
  return out;
}

std::vector<GroupElement> pow10PlusNFirst(size_t count) {
  std::vector<GroupElement> out;
  for (int n = 1; n < static_cast<int>(kPow10.size()) && out.size() < count; ++n) {
    out.push_back(GroupElement::zOf(kPow10[n]));
    if (out.size() < count) out.push_back(GroupElement::zOf(kPow10[n] + n));
  }
  return out;
}

bool staircaseContains(const GroupElement& g) {
  int64_t x = g.intValue();
  if (x < 11) return false;
  int k = floorLog10(x);
  return k >= 1 && x == kPow10[k] + staircaseOffset(k);
}

std::vector<GroupElement> staircaseEnumerate(int64_t radius) {
  std::vector<GroupElement> out;
  for (int n = 1; n < static_cast<int>(kPow10.size()); ++n) {
    int64_t v = kPow10[n] + staircaseOffset(n);
    if (v <= radius) out.push_back(GroupElement::zOf(v));
  }
  return out;
}

std::vector<GroupElement> staircaseFirst(size_t count) {
  std::vector<GroupElement> out;
  for (int n = 1; n < static_cast<int>(kPow10.size()) && out.size() < count; ++n) {
    out.push_back(GroupElement::zOf(kPow10[n] + staircaseOffset(n)));
  }
  return out;
}

bool nablaContains(const GroupElement& g) {
  int64_t x = g.intValue();
  if (x == 0 || x == 1) return true;
  if (x < 10) return false;
  int k = floorLog10(x);
  return x == kPow10[k] || x == kPow10[k] + nablaOffset(k);
}

std::vector<GroupElement> nablaEnumerate(int64_t radius) {
  std::vector<GroupElement> out;
  if (radius >= 0) out.push_back(GroupElement::zOf(0));
  if (radius >= 1) out.push_back(GroupElement::zOf(1));
  for (int k = 1; k < static_cast<int>(kPow10.size()); ++k) {
    if (kPow10[k] <= radius) out.push_back(GroupElement::zOf(kPow10[k]));
    int64_t v = kPow10[k] + nablaOffset(k);
    if (v <= radius) out.push_back(GroupElement::zOf(v));
  }
  sortCanonical(out);
  return out;
}

std::vector<GroupElement> nablaFirst(size_t count) {
  std::vector<GroupElement> out;
  out.push_back(GroupElement::zOf(0));
  if (count > 1) out.push_back(GroupElement::zOf(1));
  for (int k = 1; k < static_cast<int>(kPow10.size()) && out.size() < count; ++k) {
    out.push_back(GroupElement::zOf(kPow10[k]));
    if (out.size() < count) out.push_back(GroupElement::zOf(kPow10[k] + nablaOffset(k)));
  }
  return out;
}

EventuallyPeriodic zeroSingleton() {
  EventuallyPeriodic ep;
  ep.addExceptions = {0};
  return ep;
}

EventuallyPeriodic zeroAndOdds() {
  EventuallyPeriodic ep;
  ep.modulus = 2;
  ep.posResidues = {1};
  ep.negResidues = {1};
  ep.addExceptions = {0};
  return ep;
}

// fg_xSy: reduced words starting with x and ending with y. A length-1
// word w = x starts and ends with x, so x itself lies in xSx; this keeps
// the sixteen xSy a true partition of every ball minus the identity.
struct FgParams {
  char first, last;
};

bool fgContainsImpl(const GroupElement& g, FgParams p) {
  const std::string& w = g.wordValue();
  return !w.empty() && w.front() == p.first && w.back() == p.last;
}

std::vector<GroupElement> fgEnumerateImpl(int64_t radius, FgParams p) {
  std::vector<GroupElement> out;
  for (const GroupElement& g : ball(GroupContext{GroupTag::F2}, radius)) {
    if (fgContainsImpl(g, p)) out.push_back(g);
  }
  return out;
}

std::vector<GroupElement> fgFirstImpl(size_t count, FgParams p) {
  std::vector<GroupElement> out;
  for (int64_t r = 1; r <= 13 && out.size() < count; ++r) {
    out = fgEnumerateImpl(r, p);
  }
  if (out.size() > count) out.resize(count);
  return out;
}

// Registry built around plain function pointers for the Z generators and
// sixteen fg variants expanded via templates.
template <char First, char Last>
bool fgContains(const GroupElement& g) {
  return fgContainsImpl(g, {First, Last});
}
template <char First, char Last>
std::vector<GroupElement> fgEnumerate(int64_t radius) {
  return fgEnumerateImpl(radius, {First, Last});
}
template <char First, char Last>
std::vector<GroupElement> fgFirst(size_t count) {
  return fgFirstImpl(count, {First, Last});
}

template <char First, char Last>
Builtin makeFg() {
  std::string name = std::string("fg_xSy(") + First + "," + Last + ")";
  return {name, GroupTag::F2, &fgContains<First, Last>, &fgEnumerate<First, Last>,
          &fgFirst<First, Last>, std::nullopt};
}

const std::vector<Builtin>& registry() {
  static const std::vector<Builtin> r = [] {
    std::vector<Builtin> v;
    v.push_back({"pow10", GroupTag::Z, &pow10Contains, &pow10Enumerate, &pow10First,
                 zeroSingleton()});
    v.push_back({"pow10_plus_n", GroupTag::Z, &pow10PlusNContains, &pow10PlusNEnumerate,
                 &pow10PlusNFirst, zeroSingleton()});
    v.push_back({"pow10_staircase", GroupTag::Z, &staircaseContains, &staircaseEnumerate,
                 &staircaseFirst, zeroSingleton()});
    v.push_back({"nabla_example", GroupTag::Z, &nablaContains, &nablaEnumerate, &nablaFirst,
                 zeroAndOdds()});
    v.push_back(makeFg<'a', 'a'>());
    v.push_back(makeFg<'a', 'A'>());
    v.push_back(makeFg<'a', 'b'>());
    v.push_back(makeFg<'a', 'B'>());
    v.push_back(makeFg<'A', 'a'>());
    v.push_back(makeFg<'A', 'A'>());
    v.push_back(makeFg<'A', 'b'>());
    v.push_back(makeFg<'A', 'B'>());
    v.push_back(makeFg<'b', 'a'>());
    v.push_back(makeFg<'b', 'A'>());
    v.push_back(makeFg<'b', 'b'>());
    v.push_back(makeFg<'b', 'B'>());
    v.push_back(makeFg<'B', 'a'>());
    v.push_back(makeFg<'B', 'A'>());
    v.push_back(makeFg<'B', 'b'>());
    v.push_back(makeFg<'B', 'B'>());
    return v;
  }();
  return r;
}

int builtinIndex(std::string_view name) {
  const auto& r = registry();
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Node

struct SetRepr::Node {
  Kind kind = Kind::ExplicitFinite;
  GroupTag group = GroupTag::Z;

  std::vector<GroupElement> elems;  // ExplicitFinite, canonical order
  EventuallyPeriodic ep;            // EventuallyPeriodic (always normal form)

  enum class EnumOp { Builtin, Union, Translate, Inverse, Difference };
  EnumOp op = EnumOp::Builtin;
  int builtin = -1;
  GroupElement shift;
  std::shared_ptr<const Node> left, right;
};

SetRepr::SetRepr() : node_(std::make_shared<Node>()) {}

SetRepr::SetRepr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

SetRepr SetRepr::finite(GroupTag group, std::vector<GroupElement> elements) {
  for (const GroupElement& g : elements) {
    if (g.tag() != group) throw std::invalid_argument("element group does not match set group");
  }
  sortCanonical(elements);
  auto n = std::make_shared<Node>();
  n->kind = Kind::ExplicitFinite;
  n->group = group;
  n->elems = std::move(elements);
  return SetRepr(n);
}

SetRepr SetRepr::periodic(EventuallyPeriodic ep) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::EventuallyPeriodic;
  n->group = GroupTag::Z;
  n->ep = epNormalize(ep);
  return SetRepr(n);
}

SetRepr SetRepr::generator(std::string_view name) {
  int idx = builtinIndex(name);
  if (idx < 0) throw std::invalid_argument("unknown generator: " + std::string(name));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Enumerated;
  n->group = registry()[idx].group;
  n->op = Node::EnumOp::Builtin;
  n->builtin = idx;
  return SetRepr(n);
}

GroupTag SetRepr::group() const { return node_->group; }
SetRepr::Kind SetRepr::kind() const { return node_->kind; }

const EventuallyPeriodic* SetRepr::periodicRep() const {
  return node_->kind == Kind::EventuallyPeriodic ? &node_->ep : nullptr;
}

const std::vector<GroupElement>* SetRepr::finiteElements() const {
  return node_->kind == Kind::ExplicitFinite ? &node_->elems : nullptr;
}

namespace {

bool nodeContains(const SetRepr::Node& n, const GroupElement& g);

}  // namespace

bool SetRepr::contains(const GroupElement& g) const {
  if (g.tag() != node_->group) throw std::invalid_argument("element group does not match set group");
  return nodeContains(*node_, g);
}

namespace {

using Node = SetRepr::Node;

bool nodeContains(const Node& n, const GroupElement& g) {
  switch (n.kind) {
    case SetRepr::Kind::ExplicitFinite:
      return std::binary_search(n.elems.begin(), n.elems.end(), g);
    case SetRepr::Kind::EventuallyPeriodic:
      return n.ep.contains(g.intValue());
    case SetRepr::Kind::Enumerated:
      break;
  }
  switch (n.op) {
    case Node::EnumOp::Builtin:
      return registry()[n.builtin].contains(g);
    case Node::EnumOp::Union:
      return nodeContains(*n.left, g) || nodeContains(*n.right, g);
    case Node::EnumOp::Translate:
      return nodeContains(*n.left, combine(invert(n.shift), g));
    case Node::EnumOp::Inverse:
      return nodeContains(*n.left, invert(g));
    case Node::EnumOp::Difference:
      return nodeContains(*n.left, g) && !nodeContains(*n.right, g);
  }
  return false;
}

std::vector<GroupElement> nodeEnumerate(const Node& n, int64_t radius) {
  switch (n.kind) {
    case SetRepr::Kind::ExplicitFinite: {
      std::vector<GroupElement> out;
      for (const GroupElement& g : n.elems) {
        if (g.norm() <= radius) out.push_back(g);
      }
      return out;
    }
    case SetRepr::Kind::EventuallyPeriodic: {
      std::vector<GroupElement> out;
      for (int64_t x : epEnumerate(n.ep, radius)) out.push_back(GroupElement::zOf(x));
      sortCanonical(out);
      return out;
    }
    case SetRepr::Kind::Enumerated:
      break;
  }
  switch (n.op) {
    case Node::EnumOp::Builtin:
      return registry()[n.builtin].enumerate(radius);
    case Node::EnumOp::Union: {
      std::vector<GroupElement> out = nodeEnumerate(*n.left, radius);
      std::vector<GroupElement> r = nodeEnumerate(*n.right, radius);
      out.insert(out.end(), r.begin(), r.end());
      sortCanonical(out);
      return out;
    }
    case Node::EnumOp::Translate: {
      std::vector<GroupElement> out;
      for (const GroupElement& g : nodeEnumerate(*n.left, radius + n.shift.norm())) {
        GroupElement h = combine(n.shift, g);
        if (h.norm() <= radius) out.push_back(h);
      }
      sortCanonical(out);
      return out;
    }
    case Node::EnumOp::Inverse: {
      std::vector<GroupElement> out;
      for (const GroupElement& g : nodeEnumerate(*n.left, radius)) out.push_back(invert(g));
      sortCanonical(out);
      return out;
    }
    case Node::EnumOp::Difference: {
      std::vector<GroupElement> out;
      for (const GroupElement& g : nodeEnumerate(*n.left, radius)) {
        if (!nodeContains(*n.right, g)) out.push_back(g);
      }
      return out;
    }
  }
  return {};
}

bool nodeInfinite(const Node& n) {
  switch (n.kind) {
    case SetRepr::Kind::ExplicitFinite:
      return false;
    case SetRepr::Kind::EventuallyPeriodic:
      return !n.ep.isFinite();
    case SetRepr::Kind::Enumerated:
      break;
  }
  switch (n.op) {
    case Node::EnumOp::Builtin:
      return true;  // every built-in generator is infinite
    case Node::EnumOp::Union:
      return nodeInfinite(*n.left) || nodeInfinite(*n.right);
    case Node::EnumOp::Translate:
    case Node::EnumOp::Inverse:
      return nodeInfinite(*n.left);
    case Node::EnumOp::Difference:
      return false;  // unknown; stay conservative
  }
  return false;
}

std::optional<std::vector<GroupElement>> nodeFirstMembers(const Node& n, size_t count) {
  switch (n.kind) {
    case SetRepr::Kind::ExplicitFinite: {
      std::vector<GroupElement> out = n.elems;
      if (out.size() > count) out.resize(count);
      return out;
    }
    case SetRepr::Kind::EventuallyPeriodic: {
      std::vector<GroupElement> out;
      int64_t cap = n.ep.irregularBound() + n.ep.modulus * static_cast<int64_t>(count + 2);
      for (int64_t r = 0; r <= cap && out.size() < count; ++r) {
        if (r > 0 && n.ep.contains(-r)) out.push_back(GroupElement::zOf(-r));
        if (out.size() < count && n.ep.contains(r)) out.push_back(GroupElement::zOf(r));
      }
      return out;
    }
    case SetRepr::Kind::Enumerated:
      break;
  }
  switch (n.op) {
    case Node::EnumOp::Builtin:
      return registry()[n.builtin].firstMembers(count);
    case Node::EnumOp::Union: {
      auto l = nodeFirstMembers(*n.left, count);
      auto r = nodeFirstMembers(*n.right, count);
      if (!l || !r) return std::nullopt;
      l->insert(l->end(), r->begin(), r->end());
      sortCanonical(*l);
      if (l->size() > count) l->resize(count);
      return l;
    }
    case Node::EnumOp::Translate: {
      auto l = nodeFirstMembers(*n.left, count);
      if (!l) return std::nullopt;
      for (GroupElement& g : *l) g = combine(n.shift, g);
      return l;
    }
    case Node::EnumOp::Inverse: {
      auto l = nodeFirstMembers(*n.left, count);
      if (!l) return std::nullopt;
      for (GroupElement& g : *l) g = invert(g);
      return l;
    }
    case Node::EnumOp::Difference: {
      auto l = nodeFirstMembers(*n.left, count);
      if (!l) return std::nullopt;
      std::vector<GroupElement> out;
      for (const GroupElement& g : *l) {
        if (!nodeContains(*n.right, g)) out.push_back(g);
      }
      return out;
    }
  }
  return std::nullopt;
}

std::optional<EventuallyPeriodic> nodeDeltaClosure(const Node& n) {
  switch (n.kind) {
    case SetRepr::Kind::ExplicitFinite:
    case SetRepr::Kind::EventuallyPeriodic:
      return std::nullopt;  // exact engine handles these directly
    case SetRepr::Kind::Enumerated:
      break;
  }
  switch (n.op) {
    case Node::EnumOp::Builtin:
      return registry()[n.builtin].deltaClosure;
    case Node::EnumOp::Translate:
    case Node::EnumOp::Inverse:
      // In Z the derivation is translation-invariant and symmetric.
      if (n.group == GroupTag::Z) return nodeDeltaClosure(*n.left);
      return std::nullopt;
    case Node::EnumOp::Union:
    case Node::EnumOp::Difference:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string nodeDescribe(const Node& n);

std::string describeBraceList(const std::vector<GroupElement>& elems) {
  std::string out = "{";
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ",";
    out += elems[i].str();
  }
  out += "}";
  return out;
}

std::string describeIntList(const std::vector<int64_t>& v) {
  std::string out = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  out += "}";
  return out;
}

std::string nodeDescribe(const Node& n) {
  switch (n.kind) {
    case SetRepr::Kind::ExplicitFinite:
      return "finite " + describeBraceList(n.elems);
    case SetRepr::Kind::EventuallyPeriodic: {
      std::string out = "periodic p=" + std::to_string(n.ep.modulus) +
                        " pos=" + describeIntList(n.ep.posResidues) +
                        " neg=" + describeIntList(n.ep.negResidues);
      if (!n.ep.addExceptions.empty()) out += " add=" + describeIntList(n.ep.addExceptions);
      if (!n.ep.removeExceptions.empty()) out += " remove=" + describeIntList(n.ep.removeExceptions);
      return out;
    }
    case SetRepr::Kind::Enumerated:
      break;
  }
  switch (n.op) {
    case Node::EnumOp::Builtin:
      return "gen " + registry()[n.builtin].name;
    case Node::EnumOp::Union:
      return "union(" + nodeDescribe(*n.left) + ";" + nodeDescribe(*n.right) + ")";
    case Node::EnumOp::Translate:
      return "translate " + n.shift.str() + " (" + nodeDescribe(*n.left) + ")";
    case Node::EnumOp::Inverse:
      return "inverse(" + nodeDescribe(*n.left) + ")";
    case Node::EnumOp::Difference:
      return "difference(" + nodeDescribe(*n.left) + ";" + nodeDescribe(*n.right) + ")";
  }
  return "?";
}

std::shared_ptr<const Node> enumNode(Node::EnumOp op, GroupTag group,
                                     std::shared_ptr<const Node> left,
                                     std::shared_ptr<const Node> right = nullptr,
                                     GroupElement shift = GroupElement()) {
  auto n = std::make_shared<Node>();
  n->kind = SetRepr::Kind::Enumerated;
  n->group = group;
  n->op = op;
  n->left = std::move(left);
  n->right = std::move(right);
  n->shift = std::move(shift);
  return n;
}

}  // namespace

std::vector<GroupElement> SetRepr::enumerate(const Window& w) const {
  return nodeEnumerate(*node_, w.radius);
}

bool SetRepr::declaredInfinite() const { return nodeInfinite(*node_); }

std::optional<std::vector<GroupElement>> SetRepr::firstMembers(size_t count) const {
  return nodeFirstMembers(*node_, count);
}

std::optional<SetRepr> SetRepr::deltaClosure() const {
  auto ep = nodeDeltaClosure(*node_);
  if (!ep) return std::nullopt;
  return SetRepr::periodic(*ep);
}

std::string SetRepr::describe() const { return nodeDescribe(*node_); }

bool SetRepr::sameRepresentation(const SetRepr& other) const {
  return node_->group == other.node_->group && describe() == other.describe();
}

// ---------------------------------------------------------------------------
// Algebra

SetRepr translateSet(const GroupElement& g, const SetRepr& a) {
  if (g.tag() != a.group()) throw std::invalid_argument("translate: group mismatch");
  switch (a.kind()) {
    case SetRepr::Kind::ExplicitFinite: {
      std::vector<GroupElement> out;
      for (const GroupElement& x : *a.finiteElements()) out.push_back(combine(g, x));
      return SetRepr::finite(a.group(), std::move(out));
    }
    case SetRepr::Kind::EventuallyPeriodic:
      return SetRepr::periodic(epTranslate(*a.periodicRep(), g.intValue()));
    case SetRepr::Kind::Enumerated:
      if (g.isIdentity()) return a;
      return SetRepr(enumNode(SetRepr::Node::EnumOp::Translate, a.group(), a.node_, nullptr, g));
  }
  throw std::logic_error("bad kind");
}

SetRepr inverseSet(const SetRepr& a) {
  switch (a.kind()) {
    case SetRepr::Kind::ExplicitFinite: {
      std::vector<GroupElement> out;
      for (const GroupElement& x : *a.finiteElements()) out.push_back(invert(x));
      return SetRepr::finite(a.group(), std::move(out));
    }
    case SetRepr::Kind::EventuallyPeriodic:
      return SetRepr::periodic(epInverse(*a.periodicRep()));
    case SetRepr::Kind::Enumerated:
      if (a.node_->op == SetRepr::Node::EnumOp::Inverse) return SetRepr(a.node_->left);
      return SetRepr(enumNode(SetRepr::Node::EnumOp::Inverse, a.group(), a.node_));
  }
  throw std::logic_error("bad kind");
}

namespace {

bool closedFormZ(const SetRepr& a) {
  return a.group() == GroupTag::Z && a.kind() != SetRepr::Kind::Enumerated;
}

EventuallyPeriodic asEp(const SetRepr& a) {
  if (const EventuallyPeriodic* ep = a.periodicRep()) return *ep;
  return epNormalize(epFromFinite(*a.finiteElements()));
}

}  // namespace

SetRepr unionSet(const SetRepr& a, const SetRepr& b) {
  if (a.group() != b.group()) throw std::invalid_argument("union: group mismatch");
  if (a.kind() == SetRepr::Kind::ExplicitFinite && b.kind() == SetRepr::Kind::ExplicitFinite) {
    std::vector<GroupElement> out = *a.finiteElements();
    const auto& r = *b.finiteElements();
    out.insert(out.end(), r.begin(), r.end());
    return SetRepr::finite(a.group(), std::move(out));
  }
  if (closedFormZ(a) && closedFormZ(b)) {
    return SetRepr::periodic(epUnion(asEp(a), asEp(b)));
  }
  return SetRepr(enumNode(SetRepr::Node::EnumOp::Union, a.group(), a.node_, b.node_));
}

SetRepr differenceSet(const SetRepr& a, const SetRepr& b) {
  if (a.group() != b.group()) throw std::invalid_argument("difference: group mismatch");
  if (a.kind() == SetRepr::Kind::ExplicitFinite) {
    std::vector<GroupElement> out;
    for (const GroupElement& x : *a.finiteElements()) {
      if (!b.contains(x)) out.push_back(x);
    }
    return SetRepr::finite(a.group(), std::move(out));
  }
  if (closedFormZ(a) && closedFormZ(b)) {
    return SetRepr::periodic(epDifference(asEp(a), asEp(b)));
  }
  return SetRepr(enumNode(SetRepr::Node::EnumOp::Difference, a.group(), a.node_, b.node_));
}

SetRepr productSet(const std::vector<GroupElement>& f, const SetRepr& a) {
  if (f.size() > 64) throw std::invalid_argument("product: |F| must be <= 64");
  if (f.empty()) return SetRepr::finite(a.group(), {});
  if (closedFormZ(a)) {
    std::vector<int64_t> shifts;
    for (const GroupElement& g : f) {
      if (g.tag() != a.group()) throw std::invalid_argument("product: group mismatch");
      shifts.push_back(g.intValue());
    }
    return SetRepr::periodic(epProduct(shifts, asEp(a)));
  }
  SetRepr acc = translateSet(f.front(), a);
  for (size_t i = 1; i < f.size(); ++i) acc = unionSet(acc, translateSet(f[i], a));
  return acc;
}

SetRepr allOfZ() {
  EventuallyPeriodic ep;
  ep.posResidues = {0};
  ep.negResidues = {0};
  return SetRepr::periodic(ep);
}

// ---------------------------------------------------------------------------
// Symmetry

Certificate isSymmetric(const SetRepr& a, const Window& w) {
  if (const EventuallyPeriodic* ep = a.periodicRep()) {
    EventuallyPeriodic inv = epInverse(*ep);
    if (inv == *ep) return Certificate::proven();
    EventuallyPeriodic diff = epUnion(epDifference(*ep, inv), epDifference(inv, *ep));
    auto witness = epMinCanonical(diff);
    if (!witness) throw std::logic_error("asymmetric set without witness");
    return Certificate::refuted(GroupElement::zOf(*witness));
  }
  if (a.kind() == SetRepr::Kind::ExplicitFinite) {
    std::optional<GroupElement> witness;
    for (const GroupElement& g : *a.finiteElements()) {
      for (const GroupElement& cand : {g, invert(g)}) {
        if (a.contains(cand) != a.contains(invert(cand))) {
          if (!witness || cand < *witness) witness = cand;
        }
      }
    }
    if (witness) return Certificate::refuted(*witness);
    return Certificate::proven();
  }
  // Enumerated: a found witness is exact (membership is decidable); the
  // absence of one within the window is only evidence.
  std::optional<GroupElement> witness;
  for (const GroupElement& g : a.enumerate(w)) {
    for (const GroupElement& cand : {g, invert(g)}) {
      if (a.contains(cand) != a.contains(invert(cand))) {
        if (!witness || cand < *witness) witness = cand;
      }
    }
  }
  if (witness) return Certificate::refuted(*witness);
  return Certificate::evidenceAt(w.radius, 1);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Scanner {
  std::string_view text;
  size_t pos = 0;

  void skipWs() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skipWs();
    return pos >= text.size();
  }
  char peek() {
    skipWs();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    skipWs();
    if (pos >= text.size() || text[pos] != c) {
      throw ParseError(pos, std::string("expected '") + c + "'");
    }
    ++pos;
  }
  bool tryConsume(char c) {
    skipWs();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string word() {
    skipWs();
    size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_')) {
      ++pos;
    }
    if (pos == start) throw ParseError(pos, "expected a word");
    return std::string(text.substr(start, pos - start));
  }
  int64_t integer() {
    skipWs();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start])))) {
      throw ParseError(start, "expected an integer");
    }
    return std::stoll(std::string(text.substr(start, pos - start)));
  }
  // Raw token up to whitespace or a delimiter, with balanced parens kept
  // together so Z2 elements like (1,-2) survive.
  std::string elementToken() {
    skipWs();
    size_t start = pos;
    int depth = 0;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';' ||
                         c == '}')) {
        break;
      }
      ++pos;
      if (depth == 0 && c == ')') break;
    }
    if (pos == start) throw ParseError(start, "expected an element");
    return std::string(text.substr(start, pos - start));
  }
  std::vector<std::string> braceList() {
    expect('{');
    std::vector<std::string> out;
    if (tryConsume('}')) return out;
    while (true) {
      out.push_back(elementToken());
      if (tryConsume('}')) break;
      expect(',');
    }
    return out;
  }
};

std::vector<int64_t> parseIntList(Scanner& s) {
  std::vector<int64_t> out;
  size_t at = s.pos;
  for (const std::string& tok : s.braceList()) {
    try {
      size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(at, "expected an integer list entry, got '" + tok + "'");
    }
  }
  return out;
}

GroupTag inferElementGroup(const std::string& token, size_t at) {
  if (token.empty()) throw ParseError(at, "empty element");
  char c = token[0];
  if (c == '(') return GroupTag::Z2;
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') return GroupTag::Z;
  return GroupTag::F2;
}

GroupElement parseElement(GroupTag tag, const std::string& token, size_t at) {
  try {
    return GroupElement::parse(tag, token);
  } catch (const std::exception& e) {
    throw ParseError(at, e.what());
  }
}

SetRepr parseSpec(Scanner& s);

SetRepr parsePeriodic(Scanner& s) {
  std::optional<int64_t> p;
  std::vector<int64_t> pos, neg, add, remove;
  int64_t m = 0;
  while (true) {
    s.skipWs();
    size_t save = s.pos;
    if (s.eof() || s.peek() == ';' || s.peek() == ')') break;
    std::string key = s.word();
    if (!s.tryConsume('=')) {
      s.pos = save;
      break;
    }
    if (key == "p") {
      p = s.integer();
    } else if (key == "m") {
      m = s.integer();
    } else if (key == "pos") {
      pos = parseIntList(s);
    } else if (key == "neg") {
      neg = parseIntList(s);
    } else if (key == "add") {
      add = parseIntList(s);
    } else if (key == "remove") {
      remove = parseIntList(s);
    } else {
      throw ParseError(save, "unknown periodic field '" + key + "'");
    }
  }
  if (!p) throw ParseError(s.pos, "periodic set needs p=<modulus>");
  EventuallyPeriodic ep;
  ep.modulus = *p;
  ep.posResidues = pos;
  ep.negResidues = neg;
  ep.tailStart = m;
  ep.addExceptions = add;
  ep.removeExceptions = remove;
  if (ep.modulus < 1) throw ParseError(s.pos, "modulus must be >= 1");
  for (int64_t r : pos) {
    if (r < 0 || r >= ep.modulus) throw ParseError(s.pos, "pos residue out of range");
  }
  for (int64_t r : neg) {
    if (r < 0 || r >= ep.modulus) throw ParseError(s.pos, "neg residue out of range");
  }
  if (ep.tailStart < 0) throw ParseError(s.pos, "m must be >= 0");
  std::sort(ep.posResidues.begin(), ep.posResidues.end());
  std::sort(ep.negResidues.begin(), ep.negResidues.end());
  std::sort(ep.addExceptions.begin(), ep.addExceptions.end());
  std::sort(ep.removeExceptions.begin(), ep.removeExceptions.end());
  for (int64_t e : add) {
    if (std::binary_search(ep.removeExceptions.begin(), ep.removeExceptions.end(), e)) {
      throw ParseError(s.pos, "add and remove exception sets must be disjoint");
    }
  }
  // remove entries must actually remove something from the tails
  EventuallyPeriodic tailOnly = ep;
  tailOnly.addExceptions.clear();
  tailOnly.removeExceptions.clear();
  for (int64_t e : remove) {
    if (!tailOnly.contains(e)) {
      throw ParseError(s.pos, "remove exception " + std::to_string(e) + " is not in the tail set");
    }
  }
  return SetRepr::periodic(ep);
}

SetRepr parseSpec(Scanner& s) {
  s.skipWs();
  size_t at = s.pos;
  std::string head = s.word();
  if (head == "periodic") return parsePeriodic(s);
  if (head == "finite") {
    size_t listAt = s.pos;
    std::vector<std::string> tokens = s.braceList();
    GroupTag tag = tokens.empty() ? GroupTag::Z : inferElementGroup(tokens[0], listAt);
    std::vector<GroupElement> elems;
    for (const std::string& tok : tokens) elems.push_back(parseElement(tag, tok, listAt));
    return SetRepr::finite(tag, std::move(elems));
  }
  if (head == "gen") {
    s.skipWs();
    size_t nameAt = s.pos;
    std::string name = s.word();
    if (s.pos < s.text.size() && s.text[s.pos] == '(') {
      size_t start = s.pos;
      int depth = 0;
      while (s.pos < s.text.size()) {
        if (s.text[s.pos] == '(') ++depth;
        if (s.text[s.pos] == ')') {
          --depth;
          if (depth == 0) {
            ++s.pos;
            break;
          }
        }
        ++s.pos;
      }
      name += std::string(s.text.substr(start, s.pos - start));
    }
    try {
      return SetRepr::generator(name);
    } catch (const std::exception& e) {
      throw ParseError(nameAt, e.what());
    }
  }
  if (head == "union") {
    s.expect('(');
    SetRepr left = parseSpec(s);
    s.expect(';');
    SetRepr right = parseSpec(s);
    s.expect(')');
    try {
      return unionSet(left, right);
    } catch (const std::exception& e) {
      throw ParseError(at, e.what());
    }
  }
  if (head == "inverse") {
    s.expect('(');
    SetRepr inner = parseSpec(s);
    s.expect(')');
    return inverseSet(inner);
  }
  if (head == "difference") {
    s.expect('(');
    SetRepr left = parseSpec(s);
    s.expect(';');
    SetRepr right = parseSpec(s);
    s.expect(')');
    try {
      return differenceSet(left, right);
    } catch (const std::exception& e) {
      throw ParseError(at, e.what());
    }
  }
  if (head == "translate") {
    s.skipWs();
    size_t elemAt = s.pos;
    std::string token = s.elementToken();
    s.expect('(');
    SetRepr inner = parseSpec(s);
    s.expect(')');
    GroupElement g = parseElement(inner.group(), token, elemAt);
    try {
      return translateSet(g, inner);
    } catch (const std::exception& e) {
      throw ParseError(elemAt, e.what());
    }
  }
  throw ParseError(at, "unknown set form '" + head + "'");
}

}  // namespace

SetRepr parseSetSpec(std::string_view text) {
  Scanner s{text, 0};
  SetRepr out = parseSpec(s);
  if (!s.eof()) throw ParseError(s.pos, "trailing input after set description");
  return out;
}

}  // namespace deltawb
