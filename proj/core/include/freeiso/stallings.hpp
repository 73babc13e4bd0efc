#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freeiso/words.hpp"

namespace freeiso {

// Stallings core graph of a finitely generated subgroup of F_n.
//
// Vertices are numbered breadth-first from the base (vertex 0), visiting
// neighbours in letter-code order; edges are sorted by (source, generator).
// This numbering is canonical, so two graphs of the same subgroup compare
// equal with same_shape().
//
// Every edge also carries an annotation: a word over the generating tuple
// that was folded into the graph. Reading a closed path from the base and
// multiplying the annotations gives a word in the tuple whose value in F_n is
// the path label; express_in_generators() uses this to pull elements back to
// the original generators.
class FoldedGraph {
 public:
  struct Edge {
    std::size_t source;
    std::size_t target;
    GeneratorId generator;
    Word annotation;  // over the tuple alphabet
  };

  struct BuildOptions {
    // Permutation of the initial wedge edges giving the order in which fold
    // candidates are discovered. Empty means natural order.
    std::vector<std::size_t> edge_order;
  };

  FoldedGraph() = default;

  static FoldedGraph build(std::span<const Word> tuple, std::size_t ambient_rank);
  static FoldedGraph build(std::span<const Word> tuple, std::size_t ambient_rank,
                           const BuildOptions& options);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t tuple_size() const { return tuple_size_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t base() const { return 0; }
  const std::vector<Edge>& edges() const { return edges_; }

  // First Betti number |E| - |V| + 1.
  std::size_t rank() const;

  bool contains(const Word& w) const;

  // Free basis, one element per non-tree edge in edge order.
  const std::vector<Word>& basis() const { return basis_; }

  // w as a word over the basis alphabet (letter i = basis()[i]); nullopt if w
  // is not in the subgroup.
  std::optional<Word> express(const Word& w) const;

  // w as a word over the tuple alphabet (letter i = tuple[i]); nullopt if w
  // is not in the subgroup.
  std::optional<Word> express_in_generators(const Word& w) const;

  // Label of the spanning-tree path from the base to v.
  const Word& tree_path(std::size_t v) const { return tree_paths_.at(v); }

  // Equality as based labeled graphs, ignoring annotations.
  bool same_shape(const FoldedGraph& other) const;

  // Debug export: "base 0", then one "src tgt label" line per edge.
  std::string to_edge_list(std::span<const std::string> names) const;

 private:
  struct HalfEdge {
    std::size_t edge;
    bool forward;
  };

  // Half-edge leaving v with the given letter code, if any.
  std::optional<HalfEdge> outgoing(std::size_t v, std::uint32_t code) const;
  void index();

  std::size_t ambient_rank_ = 0;
  std::size_t tuple_size_ = 0;
  std::size_t vertex_count_ = 1;
  std::vector<Edge> edges_;
  // out_[v * 2n + code] = edge index + 1, or 0.
  std::vector<std::size_t> out_;
  std::vector<Word> tree_paths_;
  std::vector<bool> is_tree_edge_;
  std::vector<std::optional<std::size_t>> basis_index_;  // per edge
  std::vector<Word> basis_;
};

}  // namespace freeiso
