#include "cracklelab/simplicial_complex.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cracklelab/errors.hpp"

namespace cracklelab {

int SimplicialComplex::max_dim() const {
  for (int k = static_cast<int>(flat_.size()) - 1; k >= 0; --k) {
    if (!flat_[static_cast<std::size_t>(k)].empty()) return k;
  }
  return -1;
}

std::size_t SimplicialComplex::count(int k) const {
  if (k < 0 || k >= static_cast<int>(flat_.size())) return 0;
  return flat_[static_cast<std::size_t>(k)].size() / static_cast<std::size_t>(k + 1);
}

std::size_t SimplicialComplex::total_count() const {
  std::size_t total = 0;
  for (int k = 0; k < static_cast<int>(flat_.size()); ++k) total += count(k);
  return total;
}

std::span<const Vertex> SimplicialComplex::simplex(int k, std::size_t i) const {
  const auto width = static_cast<std::size_t>(k + 1);
  return {flat_[static_cast<std::size_t>(k)].data() + i * width, width};
}

void SimplicialComplex::add(std::span<const Vertex> simplex) {
  if (simplex.empty()) throw DomainError("cannot add the empty simplex");
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    if (simplex[i] >= vertex_count_) {
      throw DomainError("simplex vertex " + std::to_string(simplex[i]) + " out of range (" +
                        std::to_string(vertex_count_) + " vertices)");
    }
    if (i > 0 && simplex[i - 1] >= simplex[i]) {
      throw DomainError("simplex vertices must be strictly increasing");
    }
  }
  const auto k = simplex.size() - 1;
  if (flat_.size() <= k) flat_.resize(k + 1);
  flat_[k].insert(flat_[k].end(), simplex.begin(), simplex.end());
  canonical_ = false;
}

void SimplicialComplex::canonicalize() {
  for (std::size_t k = 0; k < flat_.size(); ++k) {
    auto& data = flat_[k];
    const std::size_t width = k + 1;
    const std::size_t n = data.size() / width;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto at = [&](std::size_t i) { return data.begin() + static_cast<std::ptrdiff_t>(i * width); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(at(a), at(a) + static_cast<std::ptrdiff_t>(width), at(b),
                                          at(b) + static_cast<std::ptrdiff_t>(width));
    });
    std::vector<Vertex> sorted;
    sorted.reserve(data.size());
    for (std::size_t idx = 0; idx < n; ++idx) {
      const auto first = at(order[idx]);
      if (idx > 0 && std::equal(first, first + static_cast<std::ptrdiff_t>(width),
                                sorted.end() - static_cast<std::ptrdiff_t>(width))) {
        continue;
      }
      sorted.insert(sorted.end(), first, first + static_cast<std::ptrdiff_t>(width));
    }
    data = std::move(sorted);
  }
  while (!flat_.empty() && flat_.back().empty()) flat_.pop_back();
  canonical_ = true;
}

std::ptrdiff_t SimplicialComplex::index_of(std::span<const Vertex> simplex) const {
  if (!canonical_) throw DomainError("index_of requires a canonical complex");
  if (simplex.empty()) return -1;
  const auto k = static_cast<int>(simplex.size()) - 1;
  std::size_t lo = 0;
  std::size_t hi = count(k);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto candidate = this->simplex(k, mid);
    if (std::lexicographical_compare(candidate.begin(), candidate.end(), simplex.begin(),
                                     simplex.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count(k)) {
    const auto candidate = this->simplex(k, lo);
    if (std::equal(candidate.begin(), candidate.end(), simplex.begin(), simplex.end())) {
      return static_cast<std::ptrdiff_t>(lo);
    }
  }
  return -1;
}

bool SimplicialComplex::is_downward_closed() const {
  if (!canonical_) throw DomainError("is_downward_closed requires a canonical complex");
  std::vector<Vertex> facet;
  for (int k = 1; k <= max_dim(); ++k) {
    for (std::size_t i = 0; i < count(k); ++i) {
      const auto s = simplex(k, i);
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        facet.clear();
        for (std::size_t j = 0; j < s.size(); ++j) {
          if (j != drop) facet.push_back(s[j]);
        }
        if (!contains(facet)) return false;
      }
    }
  }
  return true;
}

void SimplicialComplex::close_downward() {
  canonicalize();
  std::vector<Vertex> facet;
  for (int k = max_dim(); k >= 1; --k) {
    const std::size_t n = count(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t drop = 0; drop <= static_cast<std::size_t>(k); ++drop) {
        facet.clear();
        const auto s = simplex(k, i);
        for (std::size_t j = 0; j < s.size(); ++j) {
          if (j != drop) facet.push_back(s[j]);
        }
        const auto target = static_cast<std::size_t>(k - 1);
        flat_[target].insert(flat_[target].end(), facet.begin(), facet.end());
      }
    }
    // Dimension k-1 must be deduplicated before its own facets are generated.
    canonicalize();
  }
}

void SimplicialComplex::write_text(std::ostream& out) const {
  out << "# vertices " << vertex_count_ << '\n';
  for (int k = 0; k <= max_dim(); ++k) {
    for (std::size_t i = 0; i < count(k); ++i) {
      const auto s = simplex(k, i);
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (j) out << ' ';
        out << s[j];
      }
      out << '\n';
    }
  }
}

std::string SimplicialComplex::to_text() const {
  std::ostringstream out;
  write_text(out);
  return out.str();
}

SimplicialComplex SimplicialComplex::read_text(std::istream& in) {
  std::vector<std::vector<Vertex>> rows;
  std::size_t declared = 0;
  bool has_header = false;
  std::size_t max_vertex_plus_one = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string key;
      if (header >> key && key == "vertices" && header >> declared) has_header = true;
      continue;
    }
    std::istringstream fields(line);
    std::vector<Vertex> row;
    long long value = 0;
    while (fields >> value) {
      if (value < 0) throw ConfigError("negative vertex index on line " + std::to_string(line_no));
      row.push_back(static_cast<Vertex>(value));
      max_vertex_plus_one = std::max(max_vertex_plus_one, static_cast<std::size_t>(value) + 1);
    }
    if (!fields.eof()) throw ConfigError("malformed simplex on line " + std::to_string(line_no));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  SimplicialComplex complex(has_header ? std::max(declared, max_vertex_plus_one) : max_vertex_plus_one);
  for (const auto& row : rows) complex.add(row);
  complex.canonicalize();
  return complex;
}

bool SimplicialComplex::operator==(const SimplicialComplex& other) const {
  if (vertex_count_ != other.vertex_count_ || max_dim() != other.max_dim()) return false;
  for (int k = 0; k <= max_dim(); ++k) {
    if (flat_[static_cast<std::size_t>(k)] != other.flat_[static_cast<std::size_t>(k)]) return false;
  }
  return true;
}

}  // namespace cracklelab
