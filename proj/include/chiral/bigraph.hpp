#pragma once

// Depth-stratified bipartite multigraphs and principal-graph pairs, with the
// bwd/gbg string encoding.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chiral/real.hpp"

namespace chiral {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, size_t pos)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

/// layers[d-1][i][j] = number of edges between vertex i at depth d and vertex
/// j at depth d-1. Depth 0 is the star and is never stored.
struct Bigraph {
  std::vector<std::vector<std::vector<int>>> layers;

  int max_depth() const { return static_cast<int>(layers.size()); }
  int count(int depth) const {
    return depth == 0 ? 1 : static_cast<int>(layers[static_cast<size_t>(depth - 1)].size());
  }
  int mult(int depth, int i, int j) const {
    return layers[static_cast<size_t>(depth - 1)][static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  int vertex_count() const;
  /// Position of (depth, index) in the flattened vertex order (star first).
  int flat_index(int depth, int index) const;
  /// Valence (with multiplicity) of a vertex.
  int valence(int depth, int index) const;
  bool operator==(const Bigraph&) const = default;
};

/// One involution per even depth 0, 2, 4, ..., stored 0-based.
using DualData = std::vector<std::vector<int>>;

struct ParsedGraph {
  Bigraph graph;
  std::optional<DualData> duals;
};

struct BigraphPair {
  Bigraph plus;
  Bigraph minus;
  DualData plus_duals;
  DualData minus_duals;
  std::vector<std::string> warnings;
};

ParsedGraph parse_bigraph(std::string_view s);
std::string serialize_bigraph(const Bigraph& g, const DualData* duals = nullptr);
std::string serialize_bigraph(const ParsedGraph& g);

/// Checks the structural invariants; throws std::invalid_argument.
void validate(const Bigraph& g);
void validate_duals(const Bigraph& g, const DualData& d);

/// Missing dual data defaults to the identity and is recorded as a warning.
BigraphPair make_pair(const ParsedGraph& plus, const ParsedGraph& minus);
BigraphPair parse_pair(std::string_view plus, std::string_view minus);
/// The pair with the roles of the two graphs exchanged.
BigraphPair dual_pair(const BigraphPair& p);

Bigraph truncate(const Bigraph& g, int k);

struct Supertransitivity {
  int chain_depth = 0;      // largest k with truncate(g, k) a chain
  bool branches = false;    // whether depth chain_depth + 1 exists
  int branch_depth = 0;     // n = chain_depth + 1 when branches
  int branch_count = 0;     // vertex count at depth n
};
Supertransitivity supertransitivity(const Bigraph& g);

/// L_j = number of closed walks of length 2j at the star, j = 0..jmax.
std::vector<BigInt> loops_at_star(const Bigraph& g, int jmax);

/// Inserts t chain vertices right after the star.
Bigraph translate(const Bigraph& g, int t);
/// Pair translation; t must be even when dual data is present.
BigraphPair translate(const BigraphPair& p, int t);

struct TranslationMatch {
  bool matches = false;
  int t = 0;
  std::string reason;
};

/// Whether `candidate` is the weed translated by t and extended strictly past
/// the weed's maximal depth. Optional masks flag which vertices at the
/// weed's maximal depth may carry extension edges (indexed like that layer).
TranslationMatch is_translated_extension(const BigraphPair& candidate, const BigraphPair& weed,
                                         bool even_only,
                                         const std::vector<bool>* plus_extendable = nullptr,
                                         const std::vector<bool>* minus_extendable = nullptr);

nlohmann::json to_json(const Bigraph& g);
nlohmann::json to_json(const BigraphPair& p);

}  // namespace chiral
