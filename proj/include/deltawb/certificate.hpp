#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "deltawb/group.hpp"

namespace deltawb {

/// Where a claim comes from: an exact computation on a closed-form
/// representation, or a windowed check at (window, threshold). Evidence
/// is never silently treated as proof; every non-exact result carries
/// its provenance.
struct Provenance {
  bool exact = true;
  int64_t window = 0;
  int64_t threshold = 0;

  static Provenance exactly() { return {true, 0, 0}; }
  static Provenance windowed(int64_t w, int64_t t) { return {false, w, t}; }

  std::string str() const {
    if (exact) return "exact";
    return "window=" + std::to_string(window) + ",t=" + std::to_string(threshold);
  }
};

enum class Verdict { Proven, Refuted, Evidence };

/// Three-valued verdict attached to every non-exact claim. Refuted
/// verdicts carry a witness when one exists.
struct Certificate {
  Verdict verdict = Verdict::Evidence;
  std::optional<GroupElement> witness;
  Provenance provenance = Provenance::exactly();

  static Certificate proven() { return {Verdict::Proven, std::nullopt, Provenance::exactly()}; }
  static Certificate refuted(GroupElement w, Provenance p = Provenance::exactly()) {
    return {Verdict::Refuted, std::move(w), p};
  }
  static Certificate evidenceAt(int64_t window, int64_t threshold) {
    return {Verdict::Evidence, std::nullopt, Provenance::windowed(window, threshold)};
  }

  std::string str() const {
    switch (verdict) {
      case Verdict::Proven: return "proven";
      case Verdict::Refuted:
        return witness ? "refuted(witness=" + witness->str() + ")" : "refuted";
      case Verdict::Evidence: return "evidence(" + provenance.str() + ")";
    }
    return "?";
  }
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(size_t off, const std::string& message)
      : std::runtime_error("parse error at offset " + std::to_string(off) + ": " + message),
        offset(off) {}
};

struct PartitionMismatch : DomainError {
  GroupElement where;
  explicit PartitionMismatch(GroupElement g)
      : DomainError("parts do not recompose the ambient set at " + g.str()), where(std::move(g)) {}
};

struct CoverNotEstablished : DomainError {
  using DomainError::DomainError;
};

struct WindowExhausted : DomainError {
  int64_t step;
  size_t forbiddenSize;
  WindowExhausted(int64_t s, size_t fs)
      : DomainError("no admissible placement within window at step " + std::to_string(s) +
                    " (forbidden-set size " + std::to_string(fs) + ")"),
        step(s),
        forbiddenSize(fs) {}
};

struct AuditFailure : DomainError {
  GroupElement difference;
  AuditFailure(GroupElement d, const std::string& message)
      : DomainError("audit failure at difference " + d.str() + ": " + message),
        difference(std::move(d)) {}
};

}  // namespace deltawb
