#pragma once

// Named obstructions applied to a principal-graph pair, each with an
// auditable verdict.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiral/bigraph.hpp"
#include "chiral/chirality.hpp"
#include "chiral/spectra.hpp"

namespace chiral {

enum class Verdict { Eliminated, Inconclusive, Survives, NotApplicable };
const char* to_string(Verdict v);

struct ObstructionOptions {
  Real tol = default_tol();
  Real unit_tol = Real("1e-9");
  /// Restricts the plus-graph P designation (index at depth n).
  std::optional<int> designate_p;
};

struct ObstructionEntry {
  std::string name;
  bool applicable = false;
  std::string reason;
  Verdict verdict = Verdict::NotApplicable;
  nlohmann::json evidence = nlohmann::json::object();

  nlohmann::json to_json() const;
};

struct ObstructionReport {
  std::string plus, minus;
  std::vector<ObstructionEntry> entries;
  Verdict overall = Verdict::Survives;

  nlohmann::json to_json() const;
  /// plus, minus, overall verdict, then name=verdict pairs; tab separated.
  std::string to_tsv() const;
};

/// Each obstruction is tried on the pair and on its dual pair.
ObstructionEntry singly_valent(const BigraphPair& pair, const ObstructionOptions& opt = {});
/// The trace-level clauses of singly_valent for P = b.p, with the capped
/// coefficient already computed; usable on synthetic branch data.
ObstructionEntry singly_valent_from_branch(const BranchData& b, const CoeffResult& c, const ObstructionOptions& opt = {});
ObstructionEntry ocneanu_triple(const BigraphPair& pair, const ObstructionOptions& opt = {});
ObstructionEntry ocneanu_quadruple(const BigraphPair& pair, const ObstructionOptions& opt = {});
ObstructionEntry star11(const BigraphPair& pair, const ObstructionOptions& opt = {});

/// Fixed order: singly_valent, ocneanu_triple, ocneanu_quadruple, star11.
ObstructionReport run_all(const BigraphPair& pair, const ObstructionOptions& opt = {});

/// Verdict for a solved s = sigma + sigma^-1 at depth n. Near-boundary cases
/// (within 1e3 times the relevant tolerance) come back inconclusive.
Verdict verdict_from_s(const Real& s, int n, Parity parity, const ObstructionOptions& opt,
                       nlohmann::json& evidence);

}  // namespace chiral
