#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qkdist/error.hpp"

namespace qkdist {

/// Largest Weyl group order the library will enumerate.
inline constexpr std::uint64_t kWeylOrderCap = 50'000;

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct CartanType {
  Family family = Family::A;
  int rank = 1;

  auto operator<=>(const CartanType&) const = default;

  std::string name() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }

  /// Throws if the family/rank combination does not name a finite type.
  void validate() const {
    bool ok = false;
    switch (family) {
      case Family::A: ok = rank >= 1; break;
      case Family::B: ok = rank >= 2; break;
      case Family::C: ok = rank >= 2; break;
      case Family::D: ok = rank >= 3; break;
      case Family::E: ok = rank >= 6 && rank <= 8; break;
      case Family::F: ok = rank == 4; break;
      case Family::G: ok = rank == 2; break;
    }
    if (!ok) throw Error("invalid Cartan type " + name());
  }

  /// |W|, saturating at UINT64_MAX (never reached for valid types).
  std::uint64_t weyl_order() const {
    auto factorial = [](int n) {
      std::uint64_t f = 1;
      for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
      return f;
    };
    switch (family) {
      case Family::A: return factorial(rank + 1);
      case Family::B:
      case Family::C: return (std::uint64_t{1} << rank) * factorial(rank);
      case Family::D: return (std::uint64_t{1} << (rank - 1)) * factorial(rank);
      case Family::E: return rank == 6 ? 51'840ULL : rank == 7 ? 2'903'040ULL : 696'729'600ULL;
      case Family::F: return 1'152;
      case Family::G: return 12;
    }
    return 0;
  }

  /// Parses names such as "A3", "g2" or "B 4".
  static CartanType parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.size() < 2) throw ParseError("bad Cartan type '" + std::string(text) + "'");
    char f = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    if (std::string_view("ABCDEFG").find(f) == std::string_view::npos)
      throw ParseError("unknown Cartan family '" + std::string(1, s[0]) + "'");
    int rank = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError("bad Cartan type '" + std::string(text) + "'");
      rank = rank * 10 + (s[i] - '0');
      if (rank > 1000) throw ParseError("rank too large in '" + std::string(text) + "'");
    }
    CartanType t{static_cast<Family>(f), rank};
    t.validate();
    return t;
  }
};

/// A lattice vector in simple-root coordinates. Roots are the special case
/// where the vector lies in Phi.
struct Root {
  std::vector<int> coeffs;

  auto operator<=>(const Root&) const = default;

  std::size_t rank() const { return coeffs.size(); }
  int height() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
  }
  /// First nonzero coefficient is positive. For roots this is the sign of the root.
  bool is_positive() const {
    for (int c : coeffs)
      if (c != 0) return c > 0;
    return false;
  }
  bool is_negative() const {
    for (int c : coeffs)
      if (c != 0) return c < 0;
    return false;
  }
  Root operator-() const {
    Root r = *this;
    for (int& c : r.coeffs) c = -c;
    return r;
  }
  static Root simple(std::size_t rank, std::size_t i) {
    Root r{std::vector<int>(rank, 0)};
    r.coeffs.at(i) = 1;
    return r;
  }
};

/// A vector in simple-coroot coordinates.
struct Coroot {
  std::vector<int> coeffs;

  auto operator<=>(const Coroot&) const = default;
  std::size_t rank() const { return coeffs.size(); }
};

/// Root datum of a finite Cartan type. Cartan matrix convention:
/// cartan(i, j) = <alpha_j, alpha_i^vee>, Bourbaki node numbering.
/// Indices are 0-based internally; the CLI and file formats are 1-based.
class RootSystem {
 public:
  explicit RootSystem(CartanType type) : type_(type) {
    type_.validate();
    if (type_.weyl_order() > kWeylOrderCap)
      throw Error("Weyl group of " + type_.name() + " has order " +
                  std::to_string(type_.weyl_order()) + ", above the enumeration cap of " +
                  std::to_string(kWeylOrderCap));
    n_ = static_cast<std::size_t>(type_.rank);
    build_cartan();
    build_roots();
  }

  const CartanType& type() const { return type_; }
  std::size_t rank() const { return n_; }

  int cartan(std::size_t i, std::size_t j) const { return cartan_[i * n_ + j]; }

  const std::vector<Root>& positive_roots() const { return positive_; }
  std::size_t num_positive_roots() const { return positive_.size(); }

  Root simple_root(std::size_t i) const { return Root::simple(n_, i); }
  Coroot simple_coroot(std::size_t i) const {
    Coroot c{std::vector<int>(n_, 0)};
    c.coeffs.at(i) = 1;
    return c;
  }

  /// Index of a positive root in positive_roots(), if it is one.
  std::optional<std::size_t> positive_index(const Root& r) const {
    auto it = index_.find(r.coeffs);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool is_root(const Root& r) const {
    if (r.rank() != n_) return false;
    return positive_index(r).has_value() || positive_index(-r).has_value();
  }

  /// alpha^vee for any root alpha (negative roots map to negative coroots).
  Coroot coroot(const Root& r) const {
    if (r.rank() != n_) throw Error("root dimension mismatch");
    if (auto i = positive_index(r)) return coroots_[*i];
    if (auto i = positive_index(-r)) {
      Coroot c = coroots_[*i];
      for (int& x : c.coeffs) x = -x;
      return c;
    }
    throw Error("not a root");
  }

  /// <lambda, c> = sum_ij c_i cartan(i,j) lambda_j.
  int pairing(const Root& lambda, const Coroot& c) const {
    if (lambda.rank() != n_ || c.rank() != n_) throw Error("pairing dimension mismatch");
    int s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (c.coeffs[i] == 0) continue;
      int row = 0;
      for (std::size_t j = 0; j < n_; ++j) row += cartan(i, j) * lambda.coeffs[j];
      s += c.coeffs[i] * row;
    }
    return s;
  }

  /// <lambda, alpha_i^vee>.
  int pairing_simple(const Root& lambda, std::size_t i) const {
    int s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += cartan(i, j) * lambda.coeffs[j];
    return s;
  }

  /// s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i.
  Root simple_reflect(Root lambda, std::size_t i) const {
    lambda.coeffs[i] -= pairing_simple(lambda, i);
    return lambda;
  }

 private:
  void bond(std::size_t i, std::size_t j, int multiplicity, bool i_long) {
    // 0-based nodes; for multiple bonds the short node carries -multiplicity.
    cartan_[i * n_ + j] = i_long || multiplicity == 1 ? -1 : -multiplicity;
    cartan_[j * n_ + i] = !i_long || multiplicity == 1 ? -1 : -multiplicity;
  }

  void build_cartan() {
    cartan_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) cartan_[i * n_ + i] = 2;
    const std::size_t n = n_;
    switch (type_.family) {
      case Family::A:
        for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1, 1, true);
        break;
      case Family::B:
        for (std::size_t i = 0; i + 2 < n; ++i) bond(i, i + 1, 1, true);
        bond(n - 2, n - 1, 2, true);  // alpha_n short
        break;
      case Family::C:
        for (std::size_t i = 0; i + 2 < n; ++i) bond(i, i + 1, 1, true);
        bond(n - 2, n - 1, 2, false);  // alpha_n long
        break;
      case Family::D:
        for (std::size_t i = 0; i + 2 < n; ++i) bond(i, i + 1, 1, true);
        bond(n - 3, n - 1, 1, true);
        break;
      case Family::E:
        bond(0, 2, 1, true);
        bond(1, 3, 1, true);
        for (std::size_t i = 2; i + 1 < n; ++i) bond(i, i + 1, 1, true);
        break;
      case Family::F:
        bond(0, 1, 1, true);
        bond(1, 2, 2, true);  // alpha_1, alpha_2 long
        bond(2, 3, 1, true);
        break;
      case Family::G:
        bond(0, 1, 3, false);  // alpha_1 short
        break;
    }
  }

  // Closes the simple (root, coroot) pairs under simple reflections, acting on
  // roots and on coroots simultaneously so that each coroot stays attached to
  // its root without any real inner product.
  void build_roots() {
    std::map<std::vector<int>, std::vector<int>> found;
    std::deque<std::pair<Root, Coroot>> queue;
    for (std::size_t i = 0; i < n_; ++i) {
      found.emplace(simple_root(i).coeffs, simple_coroot(i).coeffs);
      queue.emplace_back(simple_root(i), simple_coroot(i));
    }
    while (!queue.empty()) {
      auto [root, coroot] = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < n_; ++j) {
        if (root == simple_root(j)) continue;
        Root r = simple_reflect(root, j);
        Coroot c = coroot;
        int p = 0;  // <alpha_j, coroot>
        for (std::size_t k = 0; k < n_; ++k) p += coroot.coeffs[k] * cartan(k, j);
        c.coeffs[j] -= p;
        if (found.emplace(r.coeffs, c.coeffs).second) queue.emplace_back(std::move(r), std::move(c));
      }
    }
    std::vector<std::pair<Root, Coroot>> all;
    for (auto& [r, c] : found) all.emplace_back(Root{r}, Coroot{c});
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      if (a.first.height() != b.first.height()) return a.first.height() < b.first.height();
      return a.first.coeffs > b.first.coeffs;
    });
    for (std::size_t k = 0; k < all.size(); ++k) {
      index_.emplace(all[k].first.coeffs, k);
      positive_.push_back(std::move(all[k].first));
      coroots_.push_back(std::move(all[k].second));
    }
  }

  CartanType type_;
  std::size_t n_ = 0;
  std::vector<int> cartan_;
  std::vector<Root> positive_;
  std::vector<Coroot> coroots_;
  std::map<std::vector<int>, std::size_t> index_;
};

inline std::shared_ptr<const RootSystem> build_root_system(CartanType t) {
  return std::make_shared<const RootSystem>(t);
}

/// Simple-root indices (0-based) spanning the parabolic root subsystem.
class ParabolicSubset {
 public:
  ParabolicSubset() = default;
  explicit ParabolicSubset(std::set<std::size_t> indices) : indices_(std::move(indices)) {}

  static ParabolicSubset full(std::size_t rank) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < rank; ++i) s.insert(i);
    return ParabolicSubset(std::move(s));
  }
  /// Delta minus {beta}: the maximal parabolic P_beta.
  static ParabolicSubset maximal(std::size_t rank, std::size_t beta) {
    auto p = full(rank);
    p.indices_.erase(beta);
    return p;
  }

  bool contains(std::size_t i) const { return indices_.count(i) != 0; }
  const std::set<std::size_t>& indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }
  bool is_subset_of(const ParabolicSubset& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                         indices_.end());
  }

  /// Delta \ Delta_P, ascending.
  std::vector<std::size_t> complement(std::size_t rank) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rank; ++i)
      if (!contains(i)) out.push_back(i);
    return out;
  }

  void validate(std::size_t rank) const {
    for (std::size_t i : indices_)
      if (i >= rank)
        throw Error("parabolic index " + std::to_string(i + 1) + " out of range for rank " +
                    std::to_string(rank));
  }

  bool operator==(const ParabolicSubset&) const = default;

 private:
  std::set<std::size_t> indices_;
};

/// True iff every nonzero coefficient of alpha sits at an index of Delta_P.
inline bool in_parabolic_span(const Root& alpha, const ParabolicSubset& parabolic) {
  for (std::size_t i = 0; i < alpha.coeffs.size(); ++i)
    if (alpha.coeffs[i] != 0 && !parabolic.contains(i)) return false;
  return true;
}

}  // namespace qkdist
