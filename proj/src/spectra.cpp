#include "chiral/spectra.hpp"

#include <cmath>
#include <stdexcept>

namespace chiral {

using boost::multiprecision::abs;
using boost::multiprecision::acos;
using boost::multiprecision::cos;
using boost::multiprecision::pow;
using boost::multiprecision::sin;
using boost::multiprecision::sqrt;

Real QParam::qint(int k) const {
  if (classical) return Real(k);
  if (root_of_unity) {
    const Real pi = real_pi();
    return sin(Real(k) * pi / m) / sin(pi / m);
  }
  return (pow(q, k) - pow(q, -k)) / (q - 1 / q);
}

nlohmann::json QParam::to_json() const {
  nlohmann::json j = {{"norm", format_real(norm, 20)}, {"classical", classical}, {"rootOfUnity", root_of_unity}};
  if (root_of_unity) {
    j["m"] = m;
    j["q"] = "exp(i*pi/" + std::to_string(m) + ")";
  } else {
    j["q"] = format_real(q, 20);
  }
  return j;
}

namespace {

// Dense symmetric adjacency in flattened vertex order.
std::vector<std::vector<int>> adjacency(const Bigraph& g) {
  const int N = g.vertex_count();
  std::vector<std::vector<int>> A(static_cast<size_t>(N), std::vector<int>(static_cast<size_t>(N), 0));
  for (int d = 1; d <= g.max_depth(); ++d)
    for (int i = 0; i < g.count(d); ++i)
      for (int j = 0; j < g.count(d - 1); ++j) {
        const int m = g.mult(d, i, j);
        const auto u = static_cast<size_t>(g.flat_index(d, i)), v = static_cast<size_t>(g.flat_index(d - 1, j));
        A[u][v] = A[v][u] = m;
      }
  return A;
}

Real eval_poly(const std::vector<Real>& c, const Real& x, Real* deriv) {
  Real p = 0, dp = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  if (deriv) *deriv = dp;
  return p;
}

}  // namespace

std::vector<BigInt> characteristic_polynomial(const Bigraph& g) {
  // Faddeev-LeVerrier: every division by k is exact over the integers.
  const auto A = adjacency(g);
  const size_t N = A.size();
  std::vector<BigInt> c(N + 1);
  c[N] = 1;
  std::vector<std::vector<BigInt>> M(N, std::vector<BigInt>(N, BigInt(0)));
  for (size_t k = 1; k <= N; ++k) {
    std::vector<std::vector<BigInt>> AM(N, std::vector<BigInt>(N, BigInt(0)));
    for (size_t i = 0; i < N; ++i)
      for (size_t l = 0; l < N; ++l) {
        if (!A[i][l]) continue;
        for (size_t j = 0; j < N; ++j) AM[i][j] += A[i][l] * M[l][j];
      }
    // M_k = A M_{k-1} + c_{N-k+1} I
    for (size_t i = 0; i < N; ++i) AM[i][i] += c[N - k + 1];
    M = std::move(AM);
    BigInt tr = 0;
    for (size_t i = 0; i < N; ++i)
      for (size_t l = 0; l < N; ++l)
        if (A[i][l]) tr += A[i][l] * M[l][i];
    c[N - k] = -tr / static_cast<long>(k);
  }
  return c;
}

Real graph_norm(const Bigraph& g) {
  validate(g);
  if (g.max_depth() == 0) return Real(0);
  const auto ci = characteristic_polynomial(g);
  std::vector<Real> c;
  for (const auto& x : ci) c.push_back(to_real(x));
  const auto A = adjacency(g);
  int rowmax = 0;
  for (const auto& row : A) {
    int s = 0;
    for (int m : row) s += m;
    rowmax = std::max(rowmax, s);
  }
  // All roots are real, so Newton from above the largest root decreases monotonically onto it.
  Real x = rowmax + 1;
  const Real stop = pow(Real(10), -static_cast<int>(working_precision()) + 8);
  for (int it = 0; it < 10000; ++it) {
    Real dp;
    Real p = eval_poly(c, x, &dp);
    if (dp == 0) break;
    Real step = p / dp;
    x -= step;
    if (abs(step) <= stop * (1 + abs(x))) break;
  }
  // Bisection polish. p > 0 right of the simple largest root, p < 0 just left of it.
  Real delta("1e-35");
  Real hi = x + delta, lo = x - delta;
  for (int i = 0; i < 200 && !(eval_poly(c, hi, nullptr) > 0); ++i, delta *= 2) hi += delta;
  delta = Real("1e-35");
  for (int i = 0; i < 200 && !(eval_poly(c, lo, nullptr) < 0); ++i, delta *= 2) lo -= delta;
  for (int it = 0; it < 400 && hi - lo > Real("1e-45"); ++it) {
    Real mid = (lo + hi) / 2;
    if (eval_poly(c, mid, nullptr) > 0) hi = mid;
    else lo = mid;
  }
  x = (lo + hi) / 2;
  return x;
}

QParam q_from_norm(const Real& norm, const Real& tol) {
  if (norm < 0) throw std::domain_error("negative norm");
  QParam q;
  q.norm = norm;
  q.q = 1;
  if (abs(norm - 2) <= tol) {
    q.classical = true;
    q.norm = 2;
    return q;
  }
  if (norm > 2) {
    q.q = (norm + sqrt(norm * norm - 4)) / 2;
    return q;
  }
  const Real pi = real_pi();
  const Real mr = pi / acos(norm / 2);
  const long m = std::lround(static_cast<double>(mr));
  if (m < 2 || abs(2 * cos(pi / m) - norm) > tol)
    throw std::domain_error("norm " + format_real(norm, 15) + " is below 2 but not of the form 2cos(pi/m)");
  q.root_of_unity = true;
  q.m = static_cast<int>(m);
  return q;
}

Dims dimension_vector(const Bigraph& g, const Real& norm) {
  const auto A = adjacency(g);
  const size_t N = A.size();
  Dims dims(static_cast<size_t>(g.max_depth()) + 1);
  for (int d = 0; d <= g.max_depth(); ++d) dims[static_cast<size_t>(d)].assign(static_cast<size_t>(g.count(d)), Real(0));
  dims[0][0] = 1;
  if (N == 1) return dims;
  // (A - norm I) x = 0 with x_star = 1; drop the star row and column.
  const size_t n = N - 1;
  std::vector<std::vector<Real>> M(n, std::vector<Real>(n + 1, Real(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) M[i][j] = A[i + 1][j + 1];
    M[i][i] -= norm;
    M[i][n] = -Real(A[i + 1][0]);
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (abs(M[r][col]) > abs(M[piv][col])) piv = r;
    if (M[piv][col] == 0) throw std::domain_error("singular system for the Perron-Frobenius vector");
    std::swap(M[piv], M[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0) continue;
      Real f = M[r][col] / M[col][col];
      for (size_t k = col; k <= n; ++k) M[r][k] -= f * M[col][k];
    }
  }
  size_t flat = 1;
  for (int d = 1; d <= g.max_depth(); ++d)
    for (int i = 0; i < g.count(d); ++i, ++flat) {
      Real x = M[flat - 1][n] / M[flat - 1][flat - 1];
      if (!(x > 0))
        throw std::domain_error("dimension vector is not strictly positive at depth " + std::to_string(d));
      dims[static_cast<size_t>(d)][static_cast<size_t>(i)] = x;
    }
  return dims;
}

Real eigen_residual(const Bigraph& g, const Dims& dims, const Real& norm) {
  Real worst = 0;
  for (int d = 0; d <= g.max_depth(); ++d)
    for (int i = 0; i < g.count(d); ++i) {
      Real s = 0;
      if (d > 0)
        for (int j = 0; j < g.count(d - 1); ++j) s += g.mult(d, i, j) * dims[static_cast<size_t>(d - 1)][static_cast<size_t>(j)];
      if (d < g.max_depth())
        for (int k = 0; k < g.count(d + 1); ++k) s += g.mult(d + 1, k, i) * dims[static_cast<size_t>(d + 1)][static_cast<size_t>(k)];
      worst = std::max(worst, Real(abs(s - norm * dims[static_cast<size_t>(d)][static_cast<size_t>(i)])));
    }
  return worst;
}

namespace {

BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

std::vector<BigInt> annular_multiplicities(const Bigraph& g, int kmax) {
  const auto L = loops_at_star(g, kmax);
  std::vector<BigInt> a{BigInt(1)};
  for (int k = 1; k <= kmax; ++k) {
    Rat acc = 0;
    for (int j = 0; j <= k; ++j) {
      Rat term(BigInt(2 * k) * binomial(k + j, k - j) * L[static_cast<size_t>(j)], BigInt(k + j));
      term.canonicalize();
      acc += ((k - j) % 2 == 0) ? term : Rat(-term);
    }
    // The alternating sum treats the weight-zero piece of the 1-box space as
    // two-dimensional; the Temperley-Lieb module contributes only one.
    if (k == 1) acc += 1;
    if (acc.get_den() != 1) throw std::logic_error("non-integral annular multiplicity");
    a.push_back(acc.get_num());
  }
  return a;
}

std::string format_annular(const std::vector<BigInt>& a, int n) {
  bool prefix = n >= 1 && static_cast<int>(a.size()) > n && a[0] == 1;
  for (int k = 1; prefix && k < n; ++k) prefix = a[static_cast<size_t>(k)] == 0;
  std::string s;
  auto put = [&s](const BigInt& x) {
    std::string t = x.get_str();
    s += (t.size() == 1 && x >= 0) ? t : "(" + t + ")";
  };
  if (prefix) {
    s = "*";
    for (size_t k = static_cast<size_t>(n); k < a.size(); ++k) put(a[k]);
  } else {
    for (const auto& x : a) put(x);
  }
  return s;
}

namespace {

GraphProfile graph_profile(const Bigraph& g, int kmax) {
  GraphProfile gp;
  gp.norm = graph_norm(g);
  gp.dims = dimension_vector(g, gp.norm);
  gp.residual = eigen_residual(g, gp.dims, gp.norm);
  gp.st = supertransitivity(g);
  const int n = gp.st.branches ? gp.st.branch_depth : gp.st.chain_depth + 1;
  const int km = kmax >= 0 ? kmax : n + 1;
  gp.annular = annular_multiplicities(g, km);
  gp.annular_text = format_annular(gp.annular, n);
  return gp;
}

nlohmann::json graph_profile_json(const GraphProfile& gp, int digits) {
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& layer : gp.dims) {
    nlohmann::json l = nlohmann::json::array();
    for (const auto& x : layer) l.push_back(format_real(x, digits));
    dims.push_back(l);
  }
  nlohmann::json an = nlohmann::json::array();
  for (const auto& x : gp.annular) an.push_back(x.get_str());
  return {{"norm", format_real(gp.norm, digits)},
          {"supertransitivity", gp.st.chain_depth},
          {"branchDepth", gp.st.branches ? nlohmann::json(gp.st.branch_depth) : nlohmann::json(nullptr)},
          {"branchCount", gp.st.branch_count},
          {"dims", dims},
          {"annularMultiplicities", an},
          {"annular", gp.annular_text},
          {"eigenResidual", format_real(gp.residual, 5)}};
}

}  // namespace

SpectralProfile spectral_profile(const BigraphPair& p, int kmax, const Real& tol) {
  SpectralProfile sp;
  sp.warnings = p.warnings;
  sp.plus = graph_profile(p.plus, kmax);
  sp.minus = graph_profile(p.minus, kmax);
  if (abs(sp.plus.norm - sp.minus.norm) > tol)
    sp.warnings.push_back("plus and minus graphs have different norms (a truncated pair)");
  sp.q = q_from_norm(sp.plus.norm, tol);
  sp.index = sp.plus.norm * sp.plus.norm;
  if (!sp.plus.st.branches) sp.branch_type = "none";
  else if (sp.plus.st.branch_count == 2) sp.branch_type = "triple";
  else if (sp.plus.st.branch_count == 3) sp.branch_type = "quadruple";
  else sp.branch_type = std::to_string(sp.plus.st.branch_count + 1) + "-fold";
  return sp;
}

nlohmann::json SpectralProfile::to_json(int digits) const {
  return {{"q", q.to_json()},
          {"index", format_real(index, digits)},
          {"branchType", branch_type},
          {"plus", graph_profile_json(plus, digits)},
          {"minus", graph_profile_json(minus, digits)},
          {"warnings", warnings}};
}

const char* to_string(DualAssignment d) {
  switch (d) {
    case DualAssignment::SelfDual: return "Pbar=P";
    case DualAssignment::SwapsWithQ: return "Pbar=Q";
    case DualAssignment::Positional: return "positional";
  }
  return "?";
}

nlohmann::json BranchData::to_json(int digits) const {
  nlohmann::json j = {{"n", n},
                      {"valence", valence == 2 ? "triple" : "quadruple"},
                      {"q", q.to_json()},
                      {"P", p},
                      {"Q", q_idx},
                      {"Pcheck", pc},
                      {"Qcheck", qc},
                      {"TrP", format_real(trP, digits)},
                      {"TrQ", format_real(trQ, digits)},
                      {"TrPcheck", format_real(trPc, digits)},
                      {"TrQcheck", format_real(trQc, digits)},
                      {"r", format_real(r, digits)},
                      {"rcheck", format_real(r_check, digits)},
                      {"dualAssignment", chiral::to_string(assignment)}};
  if (valence == 3) {
    j["R"] = r_idx;
    j["Rcheck"] = rc;
    j["TrR"] = format_real(trR, digits);
    j["TrRcheck"] = format_real(trRc, digits);
  }
  return j;
}

namespace {

int self_dual_of_three(const std::vector<int>& perm, const char* side) {
  int fixed = -1, nfixed = 0;
  for (int i = 0; i < 3; ++i)
    if (perm[static_cast<size_t>(i)] == i) {
      fixed = i;
      ++nfixed;
    }
  if (nfixed != 1)
    throw std::invalid_argument(std::string("quadruple point on the ") + side +
                                " graph needs exactly one self-dual vertex and one dual pair");
  return fixed;
}

}  // namespace

BranchData branch_data(const BigraphPair& pair, const Designation& des, const Real& tol) {
  const auto st = supertransitivity(pair.plus);
  if (!st.branches) throw std::invalid_argument("graph has no branch point");
  const int n = st.branch_depth;
  const auto stm = supertransitivity(pair.minus);
  if (!stm.branches || stm.branch_depth != n || stm.branch_count != st.branch_count)
    throw std::invalid_argument("plus and minus graphs branch differently");
  for (int i = 0; i < st.branch_count; ++i)
    if (pair.plus.mult(n, i, 0) != 1 || pair.minus.mult(n, i, 0) != 1)
      throw std::invalid_argument("branch vertices must be singly attached to the chain");
  if (st.branch_count != 2 && st.branch_count != 3)
    throw std::invalid_argument("unsupported branch with " + std::to_string(st.branch_count) + " vertices");

  BranchData b;
  b.n = n;
  b.valence = st.branch_count;
  const Real norm = graph_norm(pair.plus);
  b.q = q_from_norm(norm, tol);
  const Dims dp = dimension_vector(pair.plus, norm);
  const Dims dm = dimension_vector(pair.minus, graph_norm(pair.minus));
  const auto& tp = dp[static_cast<size_t>(n)];
  const auto& tm = dm[static_cast<size_t>(n)];
  const int k = st.branch_count;
  auto in_range = [k](int i) { return i >= 0 && i < k; };
  if (des.p && !in_range(*des.p)) throw std::invalid_argument("designated P is not a branch vertex");
  if (des.p_check && !in_range(*des.p_check)) throw std::invalid_argument("designated P-check is not a branch vertex");

  if (k == 2) {
    b.p = des.p.value_or(0);
    b.q_idx = 1 - b.p;
    if (n % 2 == 1) {
      b.pc = b.p;
      b.assignment = DualAssignment::Positional;
    } else {
      b.pc = des.p_check.value_or(0);
      const auto& perm = pair.plus_duals[static_cast<size_t>(n / 2)];
      b.assignment = perm[static_cast<size_t>(b.p)] == b.p ? DualAssignment::SelfDual : DualAssignment::SwapsWithQ;
    }
    b.qc = 1 - b.pc;
    b.trP = tp[static_cast<size_t>(b.p)];
    b.trQ = tp[static_cast<size_t>(b.q_idx)];
    b.trPc = tm[static_cast<size_t>(b.pc)];
    b.trQc = tm[static_cast<size_t>(b.qc)];
    b.r = b.trQ / b.trP;
    b.r_check = b.trQc / b.trPc;
    return b;
  }

  if (n % 2 == 1) throw std::invalid_argument("quadruple points are supported at even depth only");
  const auto& pp = pair.plus_duals[static_cast<size_t>(n / 2)];
  const auto& pm = pair.minus_duals[static_cast<size_t>(n / 2)];
  b.p = des.p.value_or(self_dual_of_three(pp, "plus"));
  b.pc = des.p_check.value_or(self_dual_of_three(pm, "minus"));
  if (pp[static_cast<size_t>(b.p)] != b.p || pm[static_cast<size_t>(b.pc)] != b.pc)
    throw std::invalid_argument("designated quadruple-point P must be self-dual");
  b.q_idx = b.p == 0 ? 1 : 0;
  b.r_idx = 3 - b.p - b.q_idx;
  b.qc = b.pc == 0 ? 1 : 0;
  b.rc = 3 - b.pc - b.qc;
  if (pp[static_cast<size_t>(b.q_idx)] != b.r_idx || pm[static_cast<size_t>(b.qc)] != b.rc)
    throw std::invalid_argument("quadruple point needs Q dual to R on both graphs");
  b.assignment = DualAssignment::SelfDual;
  b.trP = tp[static_cast<size_t>(b.p)];
  b.trQ = tp[static_cast<size_t>(b.q_idx)];
  b.trR = tp[static_cast<size_t>(b.r_idx)];
  b.trPc = tm[static_cast<size_t>(b.pc)];
  b.trQc = tm[static_cast<size_t>(b.qc)];
  b.trRc = tm[static_cast<size_t>(b.rc)];
  b.r = 2 * b.trQ / b.trP;
  b.r_check = 2 * b.trQc / b.trPc;
  return b;
}

BranchData branch_data_from_traces(int n, const QParam& q, const Real& trP, const Real& trQ, const Real& trPc,
                                   const Real& trQc, DualAssignment assignment) {
  BranchData b;
  b.n = n;
  b.q = q;
  b.trP = trP;
  b.trQ = trQ;
  b.trPc = trPc;
  b.trQc = trQc;
  b.r = trQ / trP;
  b.r_check = trQc / trPc;
  b.assignment = n % 2 == 1 ? DualAssignment::Positional : assignment;
  b.synthetic = true;
  return b;
}

}  // namespace chiral
