#include "sbp/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sbp/rng.hpp"

namespace sbp {

namespace {

void check_degree(std::size_t n) {
  if (n == 0) throw std::invalid_argument("permutation degree must be at least 1");
  if (n > kMaxDegree) throw std::invalid_argument("permutation degree exceeds kMaxDegree");
}

void check_same_degree(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("degree mismatch: " + std::to_string(a.degree()) + " vs " +
                                std::to_string(b.degree()));
  }
}

}  // namespace

Permutation::Permutation(std::size_t n) {
  check_degree(n);
  images_.resize(n);
  std::iota(images_.begin(), images_.end(), point_type{0});
}

Permutation Permutation::from_images(std::vector<point_type> images) {
  check_degree(images.size());
  std::vector<bool> seen(images.size(), false);
  for (auto v : images) {
    if (v >= images.size() || seen[v]) throw std::invalid_argument("images do not form a bijection");
    seen[v] = true;
  }
  return Permutation(std::move(images), 0);
}

Permutation Permutation::from_one_line(std::span<const std::uint32_t> one_based) {
  std::vector<point_type> images(one_based.size());
  for (std::size_t i = 0; i < one_based.size(); ++i) {
    if (one_based[i] == 0) throw std::invalid_argument("one-line entries are 1-based");
    images[i] = one_based[i] - 1;
  }
  return from_images(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycle_list) {
  check_degree(n);
  std::vector<point_type> images(n);
  std::iota(images.begin(), images.end(), point_type{0});
  std::vector<bool> used(n, false);
  for (const auto& cycle : cycle_list) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const auto point = cycle[i];
      if (point == 0 || point > n) {
        throw std::invalid_argument("cycle point " + std::to_string(point) + " outside [1:" + std::to_string(n) + "]");
      }
      if (used[point - 1]) throw std::invalid_argument("point " + std::to_string(point) + " repeated in cycles");
      used[point - 1] = true;
      images[point - 1] = cycle[(i + 1) % cycle.size()] - 1;
    }
  }
  return Permutation(std::move(images), 0);
}

bool Permutation::is_identity() const {
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a] != a) return false;
  }
  return true;
}

std::size_t CycleType::degree() const {
  std::size_t n = 0;
  for (const auto& [length, multiplicity] : counts) n += length * multiplicity;
  return n;
}

Permutation identity(std::size_t n) { return Permutation(n); }

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  check_same_degree(sigma, tau);
  std::vector<Permutation::point_type> images(sigma.degree());
  for (std::size_t a = 0; a < images.size(); ++a) images[a] = sigma.images_[tau.images_[a]];
  return Permutation(std::move(images), 0);
}

Permutation inverse(const Permutation& sigma) {
  std::vector<Permutation::point_type> images(sigma.degree());
  for (std::size_t a = 0; a < images.size(); ++a) images[sigma.images_[a]] = static_cast<Permutation::point_type>(a);
  return Permutation(std::move(images), 0);
}

Permutation conjugate(const Permutation& sigma, const Permutation& g) {
  check_same_degree(sigma, g);
  // (σgσ⁻¹)(σ(a)) = σ(g(a))
  std::vector<Permutation::point_type> images(sigma.degree());
  for (std::size_t a = 0; a < images.size(); ++a) images[sigma.images_[a]] = sigma.images_[g.images_[a]];
  return Permutation(std::move(images), 0);
}

CycleType cycle_type(const Permutation& sigma) {
  CycleType type;
  std::vector<bool> seen(sigma.degree(), false);
  for (std::size_t start = 0; start < sigma.degree(); ++start) {
    if (seen[start]) continue;
    std::size_t length = 0;
    for (auto a = start; !seen[a]; a = sigma[a]) {
      seen[a] = true;
      ++length;
    }
    ++type.counts[length];
  }
  return type;
}

std::vector<std::vector<Permutation::point_type>> cycles(const Permutation& sigma) {
  std::vector<std::vector<Permutation::point_type>> out;
  std::vector<bool> seen(sigma.degree(), false);
  for (std::size_t start = 0; start < sigma.degree(); ++start) {
    if (seen[start] || sigma[start] == start) continue;
    std::vector<Permutation::point_type> cycle;
    for (auto a = static_cast<Permutation::point_type>(start); !seen[a]; a = sigma[a]) {
      seen[a] = true;
      cycle.push_back(a);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Permutation uniform_random(std::size_t n, Rng& rng) {
  check_degree(n);
  std::vector<Permutation::point_type> images(n);
  std::iota(images.begin(), images.end(), Permutation::point_type{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(images[i - 1], images[rng.below(i)]);
  }
  return Permutation::from_images(std::move(images));
}

std::vector<Permutation> all_permutations(std::size_t n) {
  check_degree(n);
  if (n > 10) throw std::invalid_argument("all_permutations: n too large to enumerate");
  std::vector<Permutation::point_type> images(n);
  std::iota(images.begin(), images.end(), Permutation::point_type{0});
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

std::size_t lexicographic_rank(const Permutation& sigma) {
  const std::size_t n = sigma.degree();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller_later = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller_later += sigma[j] < sigma[i] ? 1 : 0;
    rank = rank * (n - i) + smaller_later;
  }
  return rank;
}

std::string to_cycle_string(const Permutation& sigma) {
  const auto cs = cycles(sigma);
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& cycle : cs) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(cycle[i] + 1);
    }
    out += ')';
  }
  return out;
}

std::string to_one_line_string(const Permutation& sigma) {
  std::string out = "[";
  for (std::size_t a = 0; a < sigma.degree(); ++a) {
    if (a) out += ',';
    out += std::to_string(sigma[a] + 1);
  }
  return out + "]";
}

namespace {

std::uint32_t parse_point(std::string_view text, std::size_t& pos) {
  std::uint64_t value = 0;
  const std::size_t begin = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
    if (value > kMaxDegree) throw std::invalid_argument("point value too large");
    ++pos;
  }
  if (pos == begin) throw std::invalid_argument("expected a point number at offset " + std::to_string(begin));
  return static_cast<std::uint32_t>(value);
}

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

}  // namespace

Permutation parse_cycles(std::string_view text, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> cycle_list;
  std::size_t pos = 0;
  skip_space(text, pos);
  while (pos < text.size()) {
    if (text[pos] != '(') throw std::invalid_argument("expected '(' at offset " + std::to_string(pos));
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip_space(text, pos);
      if (pos >= text.size()) throw std::invalid_argument("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      cycle.push_back(parse_point(text, pos));
    }
    if (!cycle.empty()) cycle_list.push_back(std::move(cycle));
    skip_space(text, pos);
  }
  return Permutation::from_cycles(n, cycle_list);
}

Permutation parse_one_line(std::string_view text) {
  std::size_t pos = 0;
  skip_space(text, pos);
  if (pos >= text.size() || text[pos] != '[') throw std::invalid_argument("one-line form must start with '['");
  ++pos;
  std::vector<std::uint32_t> values;
  for (;;) {
    skip_space(text, pos);
    if (pos >= text.size()) throw std::invalid_argument("unterminated one-line form");
    if (text[pos] == ']') {
      ++pos;
      break;
    }
    if (!values.empty()) {
      if (text[pos] != ',') throw std::invalid_argument("expected ',' at offset " + std::to_string(pos));
      ++pos;
      skip_space(text, pos);
    }
    values.push_back(parse_point(text, pos));
  }
  skip_space(text, pos);
  if (pos != text.size()) throw std::invalid_argument("trailing characters after one-line form");
  return Permutation::from_one_line(values);
}

}  // namespace sbp
