#pragma once

// Numeric invariants of graphs and pairs: norm, q, Perron-Frobenius
// dimensions, annular multiplicities and branch data.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiral/bigraph.hpp"
#include "chiral/real.hpp"

namespace chiral {

inline const Real& default_tol() {
  static const Real t("1e-10");
  return t;
}

/// [2] = q + 1/q. Above 2, q > 1 is real; at 2, q = 1; below 2 the norm must
/// be 2cos(pi/m) and q = exp(i pi/m) is recorded through m.
struct QParam {
  Real norm;
  Real q;                  // 1 unless norm > 2
  bool root_of_unity = false;
  int m = 0;               // valid when root_of_unity
  bool classical = false;  // norm == 2 within tolerance

  /// Numeric quantum integer [k] in the appropriate regime.
  Real qint(int k) const;
  nlohmann::json to_json() const;
};

/// Exact characteristic polynomial of the full adjacency matrix.
std::vector<BigInt> characteristic_polynomial(const Bigraph& g);
Real graph_norm(const Bigraph& g);
/// Throws std::domain_error for norm < 0 or a norm below 2 that is not 2cos(pi/m).
QParam q_from_norm(const Real& norm, const Real& tol = default_tol());

/// dims[d][i] for vertex i at depth d, with dims[0][0] = 1.
using Dims = std::vector<std::vector<Real>>;
Dims dimension_vector(const Bigraph& g, const Real& norm);
/// max over vertices of |sum_w m(v,w) dim(w) - norm dim(v)|.
Real eigen_residual(const Bigraph& g, const Dims& dims, const Real& norm);

/// a_0 .. a_kmax from the loop counts; exact integers.
std::vector<BigInt> annular_multiplicities(const Bigraph& g, int kmax);
/// "*" followed by a_n .. a_kmax when a_0 .. a_{n-1} = 1, 0, ..., 0; otherwise
/// the full comma-free digit list.
std::string format_annular(const std::vector<BigInt>& a, int n);

struct GraphProfile {
  Real norm;
  Dims dims;
  Supertransitivity st;
  std::vector<BigInt> annular;
  std::string annular_text;
  Real residual;
};

struct SpectralProfile {
  QParam q;
  Real index;
  GraphProfile plus;
  GraphProfile minus;
  std::string branch_type;  // none | triple | quadruple | k-fold
  std::vector<std::string> warnings;
  nlohmann::json to_json(int digits = 20) const;
};

/// kmax < 0 means n + 1 with n the branch depth.
SpectralProfile spectral_profile(const BigraphPair& p, int kmax = -1, const Real& tol = default_tol());

enum class DualAssignment { SelfDual, SwapsWithQ, Positional };
const char* to_string(DualAssignment d);

struct BranchData {
  int n = 0;
  int valence = 2;          // 2 = triple point, 3 = quadruple point
  QParam q;
  // Vertex indices at depth n; r_idx / rc_idx are -1 for triple points.
  int p = 0, q_idx = 1, r_idx = -1;
  int pc = 0, qc = 1, rc = -1;
  Real trP, trQ, trR, trPc, trQc, trRc;
  Real r, r_check;
  DualAssignment assignment = DualAssignment::SelfDual;
  bool synthetic = false;   // built from traces, not from a graph pair

  bool even() const { return n % 2 == 0; }
  nlohmann::json to_json(int digits = 20) const;
};

struct Designation {
  std::optional<int> p;        // index at depth n on the plus graph
  std::optional<int> p_check;  // index at depth n on the minus graph (even n)
};

/// Throws std::invalid_argument when there is no triple or quadruple branch
/// or the designation is out of range.
BranchData branch_data(const BigraphPair& pair, const Designation& d = {}, const Real& tol = default_tol());

/// Triple-point data from traces alone.
BranchData branch_data_from_traces(int n, const QParam& q, const Real& trP, const Real& trQ, const Real& trPc,
                                   const Real& trQc, DualAssignment assignment);

}  // namespace chiral
