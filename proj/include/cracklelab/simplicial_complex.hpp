#pragma once

#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cracklelab {

using Vertex = std::uint32_t;

/// Abstract simplicial complex. Simplices are strictly increasing vertex
/// tuples stored flat per dimension; after canonicalize() every dimension
/// is sorted lexicographically and free of duplicates.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  explicit SimplicialComplex(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  std::size_t vertex_count() const { return vertex_count_; }
  /// Highest dimension holding a simplex; -1 for the empty complex.
  int max_dim() const;
  std::size_t count(int k) const;
  std::size_t total_count() const;
  std::span<const Vertex> simplex(int k, std::size_t i) const;

  /// Appends a strictly increasing tuple (validated). Leaves the complex
  /// non-canonical until canonicalize().
  void add(std::span<const Vertex> simplex);
  void add(std::initializer_list<Vertex> simplex) { add(std::span<const Vertex>(simplex.begin(), simplex.size())); }
  void canonicalize();
  bool canonical() const { return canonical_; }

  /// Index of `simplex` within its dimension, or -1. Requires canonical().
  std::ptrdiff_t index_of(std::span<const Vertex> simplex) const;
  bool contains(std::span<const Vertex> simplex) const { return index_of(simplex) >= 0; }

  bool is_downward_closed() const;
  /// Adds every face of every stored simplex, then canonicalizes.
  void close_downward();

  /// One line per simplex, space-separated vertex indices, dimension-ordered,
  /// preceded by a `# vertices N` header.
  void write_text(std::ostream& out) const;
  std::string to_text() const;
  static SimplicialComplex read_text(std::istream& in);

  bool operator==(const SimplicialComplex& other) const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Vertex>> flat_;
  bool canonical_ = true;
};

}  // namespace cracklelab
