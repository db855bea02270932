#include "cracklelab/homology.hpp"

#include <algorithm>
#include <numeric>

#include "cracklelab/errors.hpp"

namespace cracklelab {

namespace {

using Column = std::vector<std::uint32_t>;

// Row indices of the facets of simplex i in dimension k, ascending.
Column boundary_column(const SimplicialComplex& complex, int k, std::size_t i) {
  const auto s = complex.simplex(k, i);
  Column col;
  col.reserve(s.size());
  std::vector<Vertex> facet(s.size() - 1);
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    std::size_t j = 0;
    for (std::size_t m = 0; m < s.size(); ++m) {
      if (m != drop) facet[j++] = s[m];
    }
    const auto row = complex.index_of(facet);
    if (row < 0) throw DomainError("complex is not downward closed");
    col.push_back(static_cast<std::uint32_t>(row));
  }
  std::sort(col.begin(), col.end());
  return col;
}

// a ← a + b over GF(2); both sorted.
void add_into(Column& a, const Column& b, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch));
  a.swap(scratch);
}

void require_canonical(const SimplicialComplex& complex) {
  if (!complex.canonical()) throw DomainError("homology requires a canonical complex");
}

}  // namespace

std::size_t boundary_rank(const SimplicialComplex& complex, int k) {
  require_canonical(complex);
  if (k < 1 || k > complex.max_dim()) return 0;
  const std::size_t columns = complex.count(k);
  const std::size_t rows = complex.count(k - 1);
  std::vector<Column> reduced(columns);
  std::vector<std::int64_t> owner(rows, -1);  // pivot row -> column
  Column scratch;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < columns; ++c) {
    Column col = boundary_column(complex, k, c);
    while (!col.empty()) {
      const auto pivot = col.back();
      const auto other = owner[pivot];
      if (other < 0) break;
      add_into(col, reduced[static_cast<std::size_t>(other)], scratch);
    }
    if (!col.empty()) {
      owner[col.back()] = static_cast<std::int64_t>(c);
      reduced[c] = std::move(col);
      ++rank;
    }
  }
  return rank;
}

BettiVector betti(const SimplicialComplex& complex) {
  require_canonical(complex);
  const int top = complex.max_dim();
  if (top < 0) return {};
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int k = 1; k <= top; ++k) ranks[static_cast<std::size_t>(k)] = boundary_rank(complex, k);
  BettiVector out(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    out[uk] = static_cast<std::int64_t>(complex.count(k)) - static_cast<std::int64_t>(ranks[uk]) -
              static_cast<std::int64_t>(ranks[uk + 1]);
  }
  return out;
}

std::size_t connected_components(const SimplicialComplex& complex) {
  require_canonical(complex);
  const std::size_t n = complex.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = complex.count(0);
  for (std::size_t e = 0; e < complex.count(1); ++e) {
    const auto s = complex.simplex(1, e);
    const auto a = find(s[0]);
    const auto b = find(s[1]);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

std::int64_t euler_characteristic(const SimplicialComplex& complex) {
  std::int64_t chi = 0;
  for (int k = 0; k <= complex.max_dim(); ++k) {
    const auto c = static_cast<std::int64_t>(complex.count(k));
    chi += (k % 2 == 0) ? c : -c;
  }
  return chi;
}

std::string format_betti(const BettiVector& betti) {
  std::string out;
  for (std::size_t k = 0; k < betti.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(betti[k]);
  }
  return out;
}

}  // namespace cracklelab
