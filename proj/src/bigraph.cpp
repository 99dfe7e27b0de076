#include "chiral/bigraph.hpp"

#include <algorithm>

namespace chiral {

namespace {

struct Piece {
  std::string_view text;
  size_t offset;
};

std::vector<Piece> split(std::string_view s, size_t base, char sep) {
  std::vector<Piece> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back({s.substr(start, i - start), base + start});
      start = i + 1;
    }
  }
  return out;
}

int digit(const Piece& p) {
  if (p.text.empty()) throw ParseError("empty multiplicity", p.offset);
  if (p.text.size() > 1) {
    bool all_digits = std::all_of(p.text.begin(), p.text.end(), [](char c) { return c >= '0' && c <= '9'; });
    throw ParseError(all_digits ? "multi-digit entry '" + std::string(p.text) + "' is not supported"
                                : "malformed token '" + std::string(p.text) + "'",
                     p.offset);
  }
  char c = p.text[0];
  if (c < '0' || c > '9') throw ParseError(std::string("unexpected character '") + c + "'", p.offset);
  return c - '0';
}

}  // namespace

int Bigraph::vertex_count() const {
  int n = 1;
  for (const auto& l : layers) n += static_cast<int>(l.size());
  return n;
}

int Bigraph::flat_index(int depth, int index) const {
  int base = 0;
  for (int d = 0; d < depth; ++d) base += count(d);
  return base + index;
}

int Bigraph::valence(int depth, int index) const {
  int v = 0;
  if (depth > 0)
    for (int m : layers[static_cast<size_t>(depth - 1)][static_cast<size_t>(index)]) v += m;
  if (depth < max_depth())
    for (const auto& row : layers[static_cast<size_t>(depth)]) v += row[static_cast<size_t>(index)];
  return v;
}

void validate(const Bigraph& g) {
  for (int d = 1; d <= g.max_depth(); ++d) {
    const auto& layer = g.layers[static_cast<size_t>(d - 1)];
    if (layer.empty()) throw std::invalid_argument("depth " + std::to_string(d) + " has no vertices");
    for (size_t i = 0; i < layer.size(); ++i) {
      if (static_cast<int>(layer[i].size()) != g.count(d - 1))
        throw std::invalid_argument("vertex " + std::to_string(i + 1) + " at depth " + std::to_string(d) +
                                    ": multiplicity vector length mismatch");
      bool any = false;
      for (int m : layer[i]) {
        if (m < 0) throw std::invalid_argument("negative multiplicity");
        any = any || m > 0;
      }
      if (!any)
        throw std::invalid_argument("vertex " + std::to_string(i + 1) + " at depth " + std::to_string(d) +
                                    " is disconnected from depth " + std::to_string(d - 1));
    }
  }
}

void validate_duals(const Bigraph& g, const DualData& d) {
  const size_t even_depths = static_cast<size_t>(g.max_depth() / 2 + 1);
  if (d.size() != even_depths)
    throw std::invalid_argument("dual data has " + std::to_string(d.size()) + " blocks but the graph has " +
                                std::to_string(even_depths) + " even depths");
  for (size_t b = 0; b < d.size(); ++b) {
    const int depth = static_cast<int>(2 * b);
    const auto& perm = d[b];
    if (static_cast<int>(perm.size()) != g.count(depth))
      throw std::invalid_argument("dual block for depth " + std::to_string(depth) + " has wrong length");
    for (size_t i = 0; i < perm.size(); ++i) {
      if (perm[i] < 0 || perm[i] >= static_cast<int>(perm.size()))
        throw std::invalid_argument("dual entry out of range at depth " + std::to_string(depth));
      if (perm[static_cast<size_t>(perm[i])] != static_cast<int>(i))
        throw std::invalid_argument("dual permutation at depth " + std::to_string(depth) + " is not an involution");
    }
  }
}

ParsedGraph parse_bigraph(std::string_view s) {
  ParsedGraph out;
  if (s.size() < 3) throw ParseError("graph string too short", 0);
  const std::string_view prefix = s.substr(0, 3);
  const bool with_duals = prefix == "bwd";
  if (!with_duals && prefix != "gbg") throw ParseError("expected prefix 'bwd' or 'gbg'", 0);

  std::string_view body = s.substr(3);
  std::string_view dualspec;
  size_t dual_offset = 0;
  const size_t dpos = body.find("duals");
  if (with_duals) {
    if (dpos == std::string_view::npos) throw ParseError("'bwd' string without a duals section", s.size());
    dualspec = body.substr(dpos + 5);
    dual_offset = 3 + dpos + 5;
    body = body.substr(0, dpos);
  } else if (dpos != std::string_view::npos) {
    throw ParseError("'gbg' string must not carry dual data", 3 + dpos);
  }
  if (body.empty()) throw ParseError("empty graph body", 3);

  for (const auto& block : split(body, 3, 'v')) {
    if (block.text.empty()) throw ParseError("empty depth block", block.offset);
    const int depth = out.graph.max_depth() + 1;
    std::vector<std::vector<int>> layer;
    for (const auto& vert : split(block.text, block.offset, 'p')) {
      std::vector<int> mults;
      for (const auto& tok : split(vert.text, vert.offset, 'x')) mults.push_back(digit(tok));
      if (static_cast<int>(mults.size()) != out.graph.count(depth - 1))
        throw ParseError("multiplicity vector has " + std::to_string(mults.size()) + " entries, depth " +
                             std::to_string(depth - 1) + " has " + std::to_string(out.graph.count(depth - 1)) +
                             " vertices",
                         vert.offset);
      if (std::none_of(mults.begin(), mults.end(), [](int m) { return m > 0; }))
        throw ParseError("vertex with no edges to the previous depth", vert.offset);
      layer.push_back(std::move(mults));
    }
    out.graph.layers.push_back(std::move(layer));
  }

  if (with_duals) {
    if (dualspec.empty()) throw ParseError("empty duals section", dual_offset);
    DualData d;
    const auto blocks = split(dualspec, dual_offset, 'v');
    const size_t even_depths = static_cast<size_t>(out.graph.max_depth() / 2 + 1);
    if (blocks.size() != even_depths)
      throw ParseError(std::to_string(blocks.size()) + " dual blocks for " + std::to_string(even_depths) +
                           " even depths",
                       dual_offset);
    for (size_t b = 0; b < blocks.size(); ++b) {
      std::vector<int> perm;
      for (const auto& tok : split(blocks[b].text, blocks[b].offset, 'x')) {
        int v = digit(tok);
        if (v < 1) throw ParseError("dual entries are 1-based", tok.offset);
        perm.push_back(v - 1);
      }
      d.push_back(std::move(perm));
    }
    try {
      validate_duals(out.graph, d);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), dual_offset);
    }
    out.duals = std::move(d);
  }
  return out;
}

std::string serialize_bigraph(const Bigraph& g, const DualData* duals) {
  std::string s = duals ? "bwd" : "gbg";
  for (int d = 1; d <= g.max_depth(); ++d) {
    if (d > 1) s += 'v';
    const auto& layer = g.layers[static_cast<size_t>(d - 1)];
    for (size_t i = 0; i < layer.size(); ++i) {
      if (i) s += 'p';
      for (size_t j = 0; j < layer[i].size(); ++j) {
        if (j) s += 'x';
        s += std::to_string(layer[i][j]);
      }
    }
  }
  if (duals) {
    s += "duals";
    for (size_t b = 0; b < duals->size(); ++b) {
      if (b) s += 'v';
      for (size_t i = 0; i < (*duals)[b].size(); ++i) {
        if (i) s += 'x';
        s += std::to_string((*duals)[b][i] + 1);
      }
    }
  }
  return s;
}

std::string serialize_bigraph(const ParsedGraph& g) {
  return serialize_bigraph(g.graph, g.duals ? &*g.duals : nullptr);
}

namespace {

DualData identity_duals(const Bigraph& g) {
  DualData d;
  for (int depth = 0; depth <= g.max_depth(); depth += 2) {
    std::vector<int> perm(static_cast<size_t>(g.count(depth)));
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    d.push_back(std::move(perm));
  }
  return d;
}

}  // namespace

BigraphPair make_pair(const ParsedGraph& plus, const ParsedGraph& minus) {
  BigraphPair p;
  p.plus = plus.graph;
  p.minus = minus.graph;
  validate(p.plus);
  validate(p.minus);
  if (plus.duals) {
    p.plus_duals = *plus.duals;
  } else {
    p.plus_duals = identity_duals(p.plus);
    p.warnings.push_back("plus graph has no dual data; identity assumed");
  }
  if (minus.duals) {
    p.minus_duals = *minus.duals;
  } else {
    p.minus_duals = identity_duals(p.minus);
    p.warnings.push_back("minus graph has no dual data; identity assumed");
  }
  validate_duals(p.plus, p.plus_duals);
  validate_duals(p.minus, p.minus_duals);
  const int common = std::min(p.plus.max_depth(), p.minus.max_depth());
  for (int d = 1; d <= common; d += 2)
    if (p.plus.count(d) != p.minus.count(d))
      throw std::invalid_argument("odd depth " + std::to_string(d) + " has " + std::to_string(p.plus.count(d)) +
                                  " vertices on the plus graph but " + std::to_string(p.minus.count(d)) +
                                  " on the minus graph");
  if (p.plus.max_depth() != p.minus.max_depth())
    p.warnings.push_back("graphs have different maximal depths (" + std::to_string(p.plus.max_depth()) + " vs " +
                         std::to_string(p.minus.max_depth()) + ")");
  return p;
}

BigraphPair parse_pair(std::string_view plus, std::string_view minus) {
  return make_pair(parse_bigraph(plus), parse_bigraph(minus));
}

BigraphPair dual_pair(const BigraphPair& p) {
  BigraphPair d = p;
  std::swap(d.plus, d.minus);
  std::swap(d.plus_duals, d.minus_duals);
  return d;
}

Bigraph truncate(const Bigraph& g, int k) {
  if (k < 0 || k > g.max_depth())
    throw std::out_of_range("truncation depth " + std::to_string(k) + " outside 0.." + std::to_string(g.max_depth()));
  Bigraph t;
  t.layers.assign(g.layers.begin(), g.layers.begin() + k);
  return t;
}

Supertransitivity supertransitivity(const Bigraph& g) {
  Supertransitivity st;
  int k = 0;
  while (k < g.max_depth() && g.count(k + 1) == 1 && g.mult(k + 1, 0, 0) == 1) ++k;
  st.chain_depth = k;
  if (k < g.max_depth()) {
    st.branches = true;
    st.branch_depth = k + 1;
    st.branch_count = g.count(k + 1);
  }
  return st;
}

std::vector<BigInt> loops_at_star(const Bigraph& g, int jmax) {
  // L_j = |A^j e_star|^2 since A is symmetric.
  const int D = g.max_depth();
  std::vector<std::vector<BigInt>> v(static_cast<size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) v[static_cast<size_t>(d)].assign(static_cast<size_t>(g.count(d)), BigInt(0));
  v[0][0] = 1;
  std::vector<BigInt> L;
  for (int j = 0; j <= jmax; ++j) {
    BigInt norm2 = 0;
    for (const auto& layer : v)
      for (const auto& x : layer) norm2 += x * x;
    L.push_back(norm2);
    if (j == jmax) break;
    auto w = v;
    for (auto& layer : w)
      for (auto& x : layer) x = 0;
    for (int d = 1; d <= D; ++d)
      for (int i = 0; i < g.count(d); ++i)
        for (int k = 0; k < g.count(d - 1); ++k) {
          const int m = g.mult(d, i, k);
          if (!m) continue;
          w[static_cast<size_t>(d)][static_cast<size_t>(i)] += m * v[static_cast<size_t>(d - 1)][static_cast<size_t>(k)];
          w[static_cast<size_t>(d - 1)][static_cast<size_t>(k)] += m * v[static_cast<size_t>(d)][static_cast<size_t>(i)];
        }
    v = std::move(w);
  }
  return L;
}

Bigraph translate(const Bigraph& g, int t) {
  if (t < 0) throw std::invalid_argument("negative translation");
  Bigraph out;
  for (int i = 0; i < t; ++i) out.layers.push_back({{1}});
  for (const auto& l : g.layers) out.layers.push_back(l);
  return out;
}

BigraphPair translate(const BigraphPair& p, int t) {
  if (t % 2 != 0) throw std::invalid_argument("pairs with dual data only translate by even amounts");
  BigraphPair out = p;
  out.plus = translate(p.plus, t);
  out.minus = translate(p.minus, t);
  for (int i = 0; i < t / 2; ++i) {
    out.plus_duals.insert(out.plus_duals.begin() + 1, std::vector<int>{0});
    out.minus_duals.insert(out.minus_duals.begin() + 1, std::vector<int>{0});
  }
  return out;
}

namespace {

std::string graph_prefix_mismatch(const Bigraph& cand, const Bigraph& weed, const std::vector<bool>* extendable) {
  const int D = weed.max_depth();
  if (cand.max_depth() < D) return "candidate is shallower than the translated weed";
  if (!(truncate(cand, D) == weed)) return "candidate does not contain the translated weed";
  if (extendable && D < cand.max_depth()) {
    const auto& next = cand.layers[static_cast<size_t>(D)];
    for (const auto& row : next)
      for (size_t j = 0; j < row.size(); ++j)
        if (row[j] > 0 && (j >= extendable->size() || !(*extendable)[j]))
          return "extension attaches to a vertex the weed marks as final";
  }
  return {};
}

}  // namespace

TranslationMatch is_translated_extension(const BigraphPair& candidate, const BigraphPair& weed, bool even_only,
                                         const std::vector<bool>* plus_extendable,
                                         const std::vector<bool>* minus_extendable) {
  TranslationMatch m;
  const auto ws = supertransitivity(weed.plus);
  const auto cs = supertransitivity(candidate.plus);
  if (!ws.branches) {
    m.reason = "weed has no branch point";
    return m;
  }
  m.t = cs.chain_depth - ws.chain_depth;
  if (m.t < 0) {
    m.reason = "candidate branches earlier than the weed";
    return m;
  }
  if (even_only && m.t % 2 != 0) {
    m.reason = "odd translation where only even translations are allowed";
    return m;
  }
  const Bigraph tp = translate(weed.plus, m.t), tm = translate(weed.minus, m.t);
  if (auto r = graph_prefix_mismatch(candidate.plus, tp, plus_extendable); !r.empty()) {
    m.reason = "plus graph: " + r;
    return m;
  }
  if (auto r = graph_prefix_mismatch(candidate.minus, tm, minus_extendable); !r.empty()) {
    m.reason = "minus graph: " + r;
    return m;
  }
  if (m.t % 2 == 0) {
    const BigraphPair tw = translate(weed, m.t);
    for (size_t b = 0; b < tw.plus_duals.size(); ++b) {
      if (b >= candidate.plus_duals.size() || candidate.plus_duals[b] != tw.plus_duals[b] ||
          b >= candidate.minus_duals.size() || candidate.minus_duals[b] != tw.minus_duals[b]) {
        m.reason = "dual data differs at depth " + std::to_string(2 * b);
        return m;
      }
    }
  }
  m.matches = true;
  return m;
}

nlohmann::json to_json(const Bigraph& g) { return {{"depths", g.layers}}; }

nlohmann::json to_json(const BigraphPair& p) {
  auto one_based = [](const DualData& d) {
    DualData out = d;
    for (auto& perm : out)
      for (auto& x : perm) ++x;
    return out;
  };
  return {{"plus", {{"depths", p.plus.layers}, {"duals", one_based(p.plus_duals)},
                    {"string", serialize_bigraph(p.plus, &p.plus_duals)}}},
          {"minus", {{"depths", p.minus.layers}, {"duals", one_based(p.minus_duals)},
                     {"string", serialize_bigraph(p.minus, &p.minus_duals)}}},
          {"warnings", p.warnings}};
}

}  // namespace chiral
