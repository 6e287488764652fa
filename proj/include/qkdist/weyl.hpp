#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qkdist/error.hpp"
#include "qkdist/rootsys.hpp"

namespace qkdist {

using Word = std::vector<std::size_t>;

/// Parses "e" or a comma-separated list of 1-based simple-reflection indices.
inline Word parse_word(std::string_view text, std::size_t rank) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  Word w;
  if (s.empty() || s == "e") return w;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("bad reduced word '" + std::string(text) + "'");
    std::size_t i = std::stoul(item);
    if (i < 1 || i > rank)
      throw ParseError("simple reflection index " + item + " out of range 1.." + std::to_string(rank));
    w.push_back(i - 1);
  }
  return w;
}

inline std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(w[k] + 1);
  }
  return out;
}

/// Weyl group element stored as the images w(alpha_i) of the simple roots.
class WeylElement {
 public:
  WeylElement() = default;

  static WeylElement identity(std::shared_ptr<const RootSystem> sys) {
    WeylElement w;
    const std::size_t n = sys->rank();
    w.images_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) w.images_[i * n + i] = 1;
    w.sys_ = std::move(sys);
    return w;
  }

  static WeylElement simple(std::shared_ptr<const RootSystem> sys, std::size_t i) {
    if (i >= sys->rank()) throw Error("simple reflection index out of range");
    return identity(std::move(sys)).times_simple(i);
  }

  static WeylElement from_word(std::shared_ptr<const RootSystem> sys, std::span<const std::size_t> word) {
    WeylElement w = identity(sys);
    for (std::size_t i : word) {
      if (i >= sys->rank()) throw Error("simple reflection index out of range");
      w = w.times_simple(i);
    }
    return w;
  }

  static WeylElement parse(std::shared_ptr<const RootSystem> sys, std::string_view text) {
    auto word = parse_word(text, sys->rank());
    return from_word(std::move(sys), word);
  }

  /// Builds an element from explicit images; throws unless they come from W.
  static WeylElement from_images(std::shared_ptr<const RootSystem> sys, const std::vector<Root>& images) {
    const std::size_t n = sys->rank();
    if (images.size() != n) throw Error("wrong number of simple-root images");
    WeylElement w;
    w.sys_ = sys;
    for (const Root& r : images) {
      if (!sys->is_root(r)) throw Error("image is not a root");
      w.images_.insert(w.images_.end(), r.coeffs.begin(), r.coeffs.end());
    }
    // Strip right descents; an element of W reaches the identity in at most |Phi+| steps.
    WeylElement x = w;
    for (std::size_t steps = 0; steps <= sys->num_positive_roots(); ++steps) {
      auto d = x.first_right_descent();
      if (!d) {
        if (x != identity(sys)) break;
        return w;
      }
      x = x.times_simple(*d);
    }
    throw Error("images do not define a Weyl group element");
  }

  const std::shared_ptr<const RootSystem>& system() const { return sys_; }
  std::size_t rank() const { return sys_ ? sys_->rank() : 0; }

  Root image(std::size_t i) const {
    const std::size_t n = rank();
    return Root{std::vector<int>(images_.begin() + static_cast<std::ptrdiff_t>(i * n),
                                 images_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n))};
  }

  Root apply(const Root& lambda) const {
    const std::size_t n = rank();
    if (lambda.rank() != n) throw Error("dimension mismatch");
    Root out{std::vector<int>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
      if (lambda.coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out.coeffs[j] += lambda.coeffs[i] * images_[i * n + j];
    }
    return out;
  }

  /// w * s_i: (w s_i)(alpha_j) = w(alpha_j) - a_ij w(alpha_i).
  WeylElement times_simple(std::size_t i) const {
    const std::size_t n = rank();
    WeylElement out = *this;
    for (std::size_t j = 0; j < n; ++j) {
      int a = sys_->cartan(i, j);
      if (a == 0) continue;
      for (std::size_t k = 0; k < n; ++k) out.images_[j * n + k] -= a * images_[i * n + k];
    }
    return out;
  }

  /// s_i * w.
  WeylElement simple_times(std::size_t i) const {
    const std::size_t n = rank();
    WeylElement out = *this;
    for (std::size_t j = 0; j < n; ++j) {
      Root r = sys_->simple_reflect(image(j), i);
      std::copy(r.coeffs.begin(), r.coeffs.end(), out.images_.begin() + static_cast<std::ptrdiff_t>(j * n));
    }
    return out;
  }

  WeylElement operator*(const WeylElement& other) const {
    check_same(other);
    const std::size_t n = rank();
    WeylElement out = *this;
    for (std::size_t j = 0; j < n; ++j) {
      Root r = apply(other.image(j));
      std::copy(r.coeffs.begin(), r.coeffs.end(), out.images_.begin() + static_cast<std::ptrdiff_t>(j * n));
    }
    return out;
  }

  bool is_right_descent(std::size_t i) const { return image(i).is_negative(); }

  std::optional<std::size_t> first_right_descent() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (is_right_descent(i)) return i;
    return std::nullopt;
  }

  bool is_identity() const {
    const std::size_t n = rank();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (images_[i * n + j] != (i == j ? 1 : 0)) return false;
    return true;
  }

  /// Number of positive roots sent to negative roots.
  std::size_t length() const {
    std::size_t l = 0;
    for (const Root& a : sys_->positive_roots())
      if (apply(a).is_negative()) ++l;
    return l;
  }

  /// Canonical reduced word: repeatedly strip the smallest right descent.
  Word reduced_word() const {
    Word rev;
    WeylElement x = *this;
    while (auto d = x.first_right_descent()) {
      rev.push_back(*d);
      x = x.times_simple(*d);
    }
    return Word(rev.rbegin(), rev.rend());
  }

  std::string to_string() const { return format_word(reduced_word()); }

  WeylElement inverse() const {
    Word w = reduced_word();
    std::reverse(w.begin(), w.end());
    return from_word(sys_, w);
  }

  const std::vector<int>& raw_images() const { return images_; }

  bool operator==(const WeylElement& other) const { return images_ == other.images_; }
  /// Arbitrary but fixed total order (on image coordinates), for ordered containers.
  bool operator<(const WeylElement& other) const { return images_ < other.images_; }

  void check_same(const WeylElement& other) const {
    if (!sys_ || !other.sys_ || (sys_ != other.sys_ && sys_->type() != other.sys_->type()))
      throw Error("Weyl elements from different root systems");
  }

 private:
  std::shared_ptr<const RootSystem> sys_;
  std::vector<int> images_;
};

struct WeylElementHash {
  std::size_t operator()(const WeylElement& w) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : w.raw_images()) h ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// s_alpha: lambda -> lambda - <lambda, alpha^vee> alpha.
inline WeylElement reflection(const std::shared_ptr<const RootSystem>& sys, const Root& alpha) {
  if (!sys->is_root(alpha)) throw Error("reflection: not a root");
  Coroot c = sys->coroot(alpha);
  std::vector<Root> images;
  for (std::size_t i = 0; i < sys->rank(); ++i) {
    Root r = sys->simple_root(i);
    int p = sys->pairing(r, c);
    for (std::size_t k = 0; k < sys->rank(); ++k) r.coeffs[k] -= p * alpha.coeffs[k];
    images.push_back(std::move(r));
  }
  return WeylElement::from_images(sys, images);
}

inline WeylElement compose(const WeylElement& u, const WeylElement& v) { return u * v; }
inline WeylElement inverse(const WeylElement& w) { return w.inverse(); }
inline std::size_t length(const WeylElement& w) { return w.length(); }

/// Longest element of the parabolic subgroup W_P (w0 when P is everything).
inline WeylElement longest_element(const std::shared_ptr<const RootSystem>& sys, const ParabolicSubset& parabolic) {
  parabolic.validate(sys->rank());
  WeylElement w = WeylElement::identity(sys);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i : parabolic.indices()) {
      if (!w.is_right_descent(i)) {
        w = w.times_simple(i);
        grew = true;
      }
    }
  }
  return w;
}

/// Bruhat order via the lifting property: for a right descent s of v,
/// u <= v iff min(u, us) <= vs. The recursion never branches.
inline bool bruhat_leq(const WeylElement& u, const WeylElement& v) {
  u.check_same(v);
  WeylElement x = u;
  WeylElement y = v;
  while (auto d = y.first_right_descent()) {
    if (x.is_right_descent(*d)) x = x.times_simple(*d);
    y = y.times_simple(*d);
  }
  return x.is_identity();
}

inline bool is_min_rep(const WeylElement& w, const ParabolicSubset& parabolic) {
  for (std::size_t i : parabolic.indices())
    if (w.is_right_descent(i)) return false;
  return true;
}

/// The shortest element of w W_P.
inline WeylElement min_rep(const WeylElement& w, const ParabolicSubset& parabolic) {
  WeylElement x = w;
  for (bool shrank = true; shrank;) {
    shrank = false;
    for (std::size_t i : parabolic.indices()) {
      if (x.is_right_descent(i)) {
        x = x.times_simple(i);
        shrank = true;
      }
    }
  }
  return x;
}

/// v -> min_rep(w0 v): the label of the opposite class equal to O_v
/// in non-equivariant K-theory. An involution on W^P.
inline WeylElement dual(const WeylElement& v, const ParabolicSubset& parabolic) {
  if (!is_min_rep(v, parabolic)) throw Error("dual: " + v.to_string() + " is not a minimal coset representative");
  const auto& sys = v.system();
  return min_rep(longest_element(sys, ParabolicSubset::full(sys->rank())) * v, parabolic);
}

/// Sort key of the canonical total order: length, then canonical reduced word.
inline bool canonical_less(const WeylElement& a, const WeylElement& b) {
  Word wa = a.reduced_word();
  Word wb = b.reduced_word();
  if (wa.size() != wb.size()) return wa.size() < wb.size();
  return wa < wb;
}

/// The full Weyl group, enumerated once and sorted canonically.
class WeylGroup {
 public:
  explicit WeylGroup(std::shared_ptr<const RootSystem> sys) : sys_(std::move(sys)) {
    std::unordered_set<WeylElement, WeylElementHash> seen;
    std::vector<WeylElement> frontier{WeylElement::identity(sys_)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
      std::vector<WeylElement> next;
      for (const auto& w : frontier) {
        for (std::size_t i = 0; i < sys_->rank(); ++i) {
          if (w.is_right_descent(i)) continue;
          WeylElement x = w.times_simple(i);
          if (seen.insert(x).second) next.push_back(std::move(x));
        }
        if (seen.size() > kWeylOrderCap) throw Error("Weyl group enumeration exceeded the cap");
      }
      elements_.insert(elements_.end(), frontier.begin(), frontier.end());
      frontier = std::move(next);
    }
    // BFS by right multiplication visits elements level by level, so only
    // ties within a length need sorting by word.
    std::vector<std::pair<Word, std::size_t>> keyed;
    keyed.reserve(elements_.size());
    for (std::size_t k = 0; k < elements_.size(); ++k) keyed.emplace_back(elements_[k].reduced_word(), k);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
      return a.first < b.first;
    });
    std::vector<WeylElement> sorted;
    sorted.reserve(elements_.size());
    for (auto& [word, k] : keyed) {
      lengths_.push_back(word.size());
      sorted.push_back(std::move(elements_[k]));
    }
    elements_ = std::move(sorted);
  }

  const std::shared_ptr<const RootSystem>& system() const { return sys_; }
  std::size_t order() const { return elements_.size(); }
  /// Canonically sorted: by length, then lexicographic canonical word.
  const std::vector<WeylElement>& elements() const { return elements_; }
  std::size_t length_of(std::size_t k) const { return lengths_[k]; }

  WeylElement identity() const { return elements_.front(); }
  WeylElement longest() const { return elements_.back(); }

  /// Minimal coset representatives W^P, in canonical order.
  std::vector<WeylElement> enumerate_WP(const ParabolicSubset& parabolic) const {
    parabolic.validate(sys_->rank());
    std::vector<WeylElement> out;
    for (const auto& w : elements_)
      if (is_min_rep(w, parabolic)) out.push_back(w);
    return out;
  }

 private:
  std::shared_ptr<const RootSystem> sys_;
  std::vector<WeylElement> elements_;
  std::vector<std::size_t> lengths_;
};

}  // namespace qkdist
