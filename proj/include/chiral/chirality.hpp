#pragma once

// Chirality equations at an initial triple or quadruple point: the capped
// coefficient functional, the closed-form solves, and root-of-unity checks.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiral/bigraph.hpp"
#include "chiral/spectra.hpp"

namespace chiral {

class FormulaInapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Target { A, B };

struct CoeffTerm {
  int vertex = 0;        // R, index at depth n+1 of the plus graph
  int m = 0;             // edges between the base vertex and R
  Real trR;
  int dual_vertex = 0;   // index of R-bar at depth n+1
  bool dual_on_minus = true;
  int e_vertex = 0;      // E(R-bar), index at depth n
  Real trE;
  Real coeffE;           // coefficient of the target in E(R-bar)
  Real contribution;
};

struct CoeffResult {
  Real value;
  std::vector<CoeffTerm> terms;
  bool truncated = false;  // graph stops at depth n, so base' is taken as 0
  nlohmann::json to_json(int digits = 20) const;
};

/// Coefficient of A_0 (or B_0) in the cap of the dual of base', summed over
/// the depth n+1 neighbours of `base` (a depth-n index on the plus graph).
/// Throws FormulaInapplicable when some R-bar has several depth-n neighbours.
CoeffResult coeff_in_capped(const BigraphPair& pair, const BranchData& b, Target target, int base);

/// Coefficient of the target in the projection at depth-n index `e` of the
/// plus (on_minus = false) or minus graph.
Real projection_coefficient(const BranchData& b, Target target, int e, bool on_minus);

struct UnitComplex {
  Real re, im;
};

enum class Parity { None, Plus, Minus };  // omega^{n/2} = +1 / -1

struct RootCheck {
  bool admissible = false;
  std::string reason;
  Real s_clamped;
  UnitComplex sigma;      // Im >= 0 representative
  UnitComplex omega;
  int matched_k = -1;     // omega ~ exp(2 pi i k / n)
  int matched_order = 0;  // n / gcd(k, n)
  Real distance;          // |omega - matched root|
};

RootCheck root_of_unity_consistency(const Real& s, int n, Parity parity = Parity::None,
                                    const Real& unit_tol = Real("1e-9"), const Real& tol = default_tol());

struct ChiralityResult {
  std::string equation;   // E | Ebar | O | QA1 | QA2 | QB
  Real s;
  Real residual;          // |LHS(s) - RHS| against the displayed equation
  RootCheck check;
  // Quadruple points only.
  bool quadruple = false;
  Real s_a2;              // from QA2
  Real qa_disagreement;
  std::vector<Real> s_b;  // admissible sigma_B + sigma_B^-1 values
  std::vector<UnitComplex> sigma_b;
  std::vector<RootCheck> b_checks;
  std::string note;

  nlohmann::json to_json(int digits = 20) const;
};

/// Triple point: picks (E), (Ebar) or (O) from the parity of n and the dual
/// assignment. Throws std::invalid_argument when r = 1 (Ebar) or r = r-check
/// (O) fails beyond tol.
ChiralityResult solve_triple(const BranchData& b, const CoeffResult& coeff, const Real& tol = default_tol());

/// Residuals of the three triple-point equations for a given s.
Real triple_residual(const std::string& equation, const BranchData& b, const Real& c, const Real& s);

/// Quadruple point: s_A from (QA1) and (QA2), then sigma_B from (QB).
ChiralityResult solve_quadruple(const BranchData& b, const CoeffResult& coeffP, const CoeffResult& coeffQ_A,
                                const CoeffResult& coeffQ_B, const Real& tol = default_tol());

/// Convenience: branch data + coefficients + solve for a pair.
ChiralityResult chirality(const BigraphPair& pair, const BranchData& b, const Real& tol = default_tol());

}  // namespace chiral
