#include "freeiso/stallings.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

#include "freeiso/error.hpp"

namespace freeiso {

namespace {

struct WorkEdge {
  std::size_t source;
  std::size_t target;
  GeneratorId generator;
  Word annotation;
  bool alive = true;
};

struct Folder {
  std::size_t rank;
  std::vector<WorkEdge> edges;
  std::vector<bool> vertex_alive;

  std::size_t new_vertex() {
    vertex_alive.push_back(true);
    return vertex_alive.size() - 1;
  }

  // Endpoint reached and annotation read when leaving `from` along e with
  // the given letter code.
  std::pair<std::size_t, Word> read(const WorkEdge& e, std::uint32_t code) const {
    if ((code & 1u) == 0) {
      return {e.target, e.annotation};
    }
    return {e.source, invert(e.annotation)};
  }

  struct Conflict {
    std::uint32_t code;
    std::size_t first;
    std::size_t second;
  };

  std::optional<Conflict> find_conflict() const {
    const std::size_t width = 2 * rank;
    std::vector<std::size_t> seen(vertex_alive.size() * width, 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const WorkEdge& e = edges[i];
      if (!e.alive) continue;
      const std::pair<std::size_t, std::uint32_t> halves[2] = {
          {e.source, 2 * e.generator}, {e.target, 2 * e.generator + 1}};
      for (auto [v, code] : halves) {
        std::size_t& slot = seen[v * width + code];
        if (slot != 0) {
          return Conflict{code, slot - 1, i};
        }
        slot = i + 1;
      }
    }
    return std::nullopt;
  }

  void resolve(const Conflict& c) {
    auto [v, alpha] = read(edges[c.first], c.code);
    auto [w, beta] = read(edges[c.second], c.code);
    if (v == w) {
      edges[c.second].alive = false;
      return;
    }
    // Merge the non-base endpoint into the other one, after changing its
    // gauge so that the two edges carry equal annotations.
    std::size_t eliminated = w;
    std::size_t kept = v;
    std::size_t dead_edge = c.second;
    Word delta = invert(alpha) * beta;
    if (w == 0) {
      eliminated = v;
      kept = w;
      dead_edge = c.first;
      delta = invert(beta) * alpha;
    }
    Word delta_inv = invert(delta);
    for (WorkEdge& e : edges) {
      if (!e.alive) continue;
      if (e.source == eliminated) e.annotation = delta * e.annotation;
      if (e.target == eliminated) e.annotation = e.annotation * delta_inv;
    }
    for (WorkEdge& e : edges) {
      if (!e.alive) continue;
      if (e.source == eliminated) e.source = kept;
      if (e.target == eliminated) e.target = kept;
    }
    vertex_alive[eliminated] = false;
#ifndef NDEBUG
    const WorkEdge& live = edges[dead_edge == c.first ? c.second : c.first];
    const WorkEdge& dead = edges[dead_edge];
    assert(live.source == dead.source && live.target == dead.target);
    assert(live.annotation == dead.annotation);
#endif
    edges[dead_edge].alive = false;
  }

  void trim() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::size_t> degree(vertex_alive.size(), 0);
      for (const WorkEdge& e : edges) {
        if (!e.alive) continue;
        ++degree[e.source];
        ++degree[e.target];
      }
      for (std::size_t v = 1; v < vertex_alive.size(); ++v) {
        if (vertex_alive[v] && degree[v] <= 1) {
          vertex_alive[v] = false;
          for (WorkEdge& e : edges) {
            if (e.alive && (e.source == v || e.target == v)) e.alive = false;
          }
          changed = true;
        }
      }
    }
  }
};

}  // namespace

FoldedGraph FoldedGraph::build(std::span<const Word> tuple,
                               std::size_t ambient_rank) {
  return build(tuple, ambient_rank, BuildOptions{});
}

FoldedGraph FoldedGraph::build(std::span<const Word> tuple,
                               std::size_t ambient_rank,
                               const BuildOptions& options) {
  Folder f{ambient_rank, {}, {true}};
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const Word& w = tuple[i];
    check_rank(w, ambient_rank);
    std::size_t cur = 0;
    for (std::size_t k = 0; k < w.length(); ++k) {
      std::size_t next = (k + 1 == w.length()) ? 0 : f.new_vertex();
      Letter l = w[k];
      Word ann;
      if (k == 0) {
        ann = Word::generator(static_cast<GeneratorId>(i), l.sign());
      }
      if (l.sign() > 0) {
        f.edges.push_back({cur, next, l.gen(), ann});
      } else {
        f.edges.push_back({next, cur, l.gen(), ann});
      }
      cur = next;
    }
  }
  if (!options.edge_order.empty()) {
    if (options.edge_order.size() != f.edges.size()) {
      throw PreconditionError("FoldedGraph::build: edge_order has wrong size");
    }
    std::vector<WorkEdge> permuted;
    permuted.reserve(f.edges.size());
    for (std::size_t idx : options.edge_order) {
      permuted.push_back(f.edges.at(idx));
    }
    f.edges = std::move(permuted);
  }

  while (auto conflict = f.find_conflict()) {
    f.resolve(*conflict);
  }
  f.trim();

  // Canonical renumbering: BFS from the base, neighbours in letter order.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(
      f.vertex_alive.size(),
      std::vector<std::pair<std::size_t, std::size_t>>(2 * ambient_rank,
                                                       {SIZE_MAX, SIZE_MAX}));
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    const WorkEdge& e = f.edges[i];
    if (!e.alive) continue;
    adj[e.source][2 * e.generator] = {i, e.target};
    adj[e.target][2 * e.generator + 1] = {i, e.source};
  }
  std::vector<std::size_t> relabel(f.vertex_alive.size(), SIZE_MAX);
  std::deque<std::size_t> queue{0};
  relabel[0] = 0;
  std::size_t next_id = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& [edge, far] : adj[v]) {
      if (edge != SIZE_MAX && relabel[far] == SIZE_MAX) {
        relabel[far] = next_id++;
        queue.push_back(far);
      }
    }
  }

  FoldedGraph g;
  g.ambient_rank_ = ambient_rank;
  g.tuple_size_ = tuple.size();
  g.vertex_count_ = next_id;
  for (const WorkEdge& e : f.edges) {
    if (!e.alive) continue;
    g.edges_.push_back({relabel[e.source], relabel[e.target], e.generator,
                        e.annotation});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.source, a.generator) < std::tie(b.source, b.generator);
  });
  g.index();
  return g;
}

void FoldedGraph::index() {
  const std::size_t width = 2 * ambient_rank_;
  out_.assign(vertex_count_ * width, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    out_[e.source * width + 2 * e.generator] = i + 1;
    out_[e.target * width + 2 * e.generator + 1] = i + 1;
  }

  tree_paths_.assign(vertex_count_, Word());
  is_tree_edge_.assign(edges_.size(), false);
  std::vector<bool> reached(vertex_count_, false);
  reached[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t code = 0; code < width; ++code) {
      auto h = outgoing(v, code);
      if (!h) continue;
      const Edge& e = edges_[h->edge];
      std::size_t far = h->forward ? e.target : e.source;
      if (!reached[far]) {
        reached[far] = true;
        is_tree_edge_[h->edge] = true;
        tree_paths_[far] = tree_paths_[v] * Word::generator(e.generator, h->forward ? 1 : -1);
        queue.push_back(far);
      }
    }
  }

  basis_.clear();
  basis_index_.assign(edges_.size(), std::nullopt);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (is_tree_edge_[i]) continue;
    const Edge& e = edges_[i];
    basis_index_[i] = basis_.size();
    basis_.push_back(tree_paths_[e.source] * Word::generator(e.generator)
                     * invert(tree_paths_[e.target]));
  }
}

std::optional<FoldedGraph::HalfEdge> FoldedGraph::outgoing(
    std::size_t v, std::uint32_t code) const {
  std::size_t slot = out_[v * 2 * ambient_rank_ + code];
  if (slot == 0) return std::nullopt;
  return HalfEdge{slot - 1, (code & 1u) == 0};
}

std::size_t FoldedGraph::rank() const {
  return edges_.size() + 1 - vertex_count_;
}

bool FoldedGraph::contains(const Word& w) const {
  return express(w).has_value();
}

std::optional<Word> FoldedGraph::express(const Word& w) const {
  check_rank(w, ambient_rank_);
  std::size_t v = 0;
  LetterString raw;
  for (Letter l : w.letters()) {
    auto h = outgoing(v, l.code());
    if (!h) return std::nullopt;
    const Edge& e = edges_[h->edge];
    if (basis_index_[h->edge]) {
      raw.push_back(Letter(static_cast<GeneratorId>(*basis_index_[h->edge]),
                           h->forward ? 1 : -1));
    }
    v = h->forward ? e.target : e.source;
  }
  if (v != 0) return std::nullopt;
  return Word::reduce(raw);
}

std::optional<Word> FoldedGraph::express_in_generators(const Word& w) const {
  check_rank(w, ambient_rank_);
  std::size_t v = 0;
  Word acc;
  for (Letter l : w.letters()) {
    auto h = outgoing(v, l.code());
    if (!h) return std::nullopt;
    const Edge& e = edges_[h->edge];
    acc = acc * (h->forward ? e.annotation : invert(e.annotation));
    v = h->forward ? e.target : e.source;
  }
  if (v != 0) return std::nullopt;
  return acc;
}

bool FoldedGraph::same_shape(const FoldedGraph& other) const {
  if (ambient_rank_ != other.ambient_rank_
      || vertex_count_ != other.vertex_count_
      || edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.source != b.source || a.target != b.target || a.generator != b.generator) {
      return false;
    }
  }
  return true;
}

std::string FoldedGraph::to_edge_list(std::span<const std::string> names) const {
  std::ostringstream os;
  os << "base 0\n";
  for (const Edge& e : edges_) {
    os << e.source << ' ' << e.target << ' ';
    if (e.generator < names.size()) {
      os << names[e.generator];
    } else {
      os << 'g' << e.generator;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace freeiso
