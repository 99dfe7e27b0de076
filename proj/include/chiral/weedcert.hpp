#pragma once

// Symbolic elimination of weed families. Dimensions, branch factors and the
// chirality expression are rational functions of (a, q) with a = q^n, where
// n is the branch depth of the translated weed.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiral/bigraph.hpp"
#include "chiral/positivity.hpp"
#include "chiral/qlaurent.hpp"

namespace chiral {

enum class WeedEquation { Odd11, Even11, Quadruple };
const char* to_string(WeedEquation e);

struct WeedSpec {
  std::string plus_string, minus_string;
  BigraphPair pair;
  int p_vertex = -1;  // index at the branch depth on the plus graph; -1 picks it
  WeedEquation equation = WeedEquation::Odd11;
  bool even_translations = true;
  Rat q0 = 1;
  int n0 = 2;
  bool open = false;  // q > q0 instead of q >= q0
  /// Which vertices at the maximal depth may connect further (default all).
  std::vector<bool> plus_extendable, minus_extendable;
  /// Optional reference data to compare against: branch factor and the
  /// factors of the chirality expression.
  std::optional<RatFunc> reference_r;
  std::vector<BivarPoly> reference_num_factors;
  std::optional<BivarPoly> reference_den;
  /// The reference data is written in a' = a * q^-shift.
  int reference_a_shift = 0;

  static WeedSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  Region region() const;
  int branch_depth() const;
};

/// Relative dimensions, one per vertex at depth >= branch depth.
struct SymbolicDims {
  std::vector<std::vector<RatFunc>> plus, minus;  // [depth - n][index]
  int unknowns = 0;
  int equations = 0;
};

/// Throws std::domain_error when the eigen-equations are inconsistent or do
/// not determine the dimensions.
SymbolicDims symbolic_dimensions(const WeedSpec& w);

struct BranchFactors {
  int p = 0, pc = 0;  // designated vertices at the branch depth
  RatFunc r, r_check;
  bool equal = false;  // r == r-check exactly
};
BranchFactors symbolic_branch_factor(const WeedSpec& w, const SymbolicDims& d);

struct ChiralityExpression {
  std::string description;  // e.g. "s + 2"
  RatFunc s;                // absent (zero) for the squared variant
  bool squared = false;     // even *11: only s^2 is rational
  RatFunc s2;
  /// Each bound must be >= 0 for a subfactor to exist.
  std::vector<std::pair<std::string, RatFunc>> bounds;
};
ChiralityExpression chirality_expression(const WeedSpec& w, const BranchFactors& b);

enum class WeedVerdict { Eliminated, Survives, Inconclusive };
const char* to_string(WeedVerdict v);

struct EliminationCertificate {
  WeedVerdict verdict = WeedVerdict::Inconclusive;
  std::string conclusion;
  nlohmann::json data;  // full JSON document, see to_json
  nlohmann::json to_json() const { return data; }
};

EliminationCertificate eliminate_weed(const WeedSpec& w);

/// Re-validates a certificate document from its witness data alone.
CheckResult check_elimination(const nlohmann::json& cert);

}  // namespace chiral
