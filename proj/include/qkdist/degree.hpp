#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qkdist/error.hpp"

namespace qkdist {

/// A class in H_2(G/P) written in the basis indexed by Delta \ Delta_P.
/// Keys are 0-based simple-root indices, ascending.
class Degree {
 public:
  Degree() = default;
  Degree(std::vector<std::size_t> keys, std::vector<std::int64_t> values)
      : keys_(std::move(keys)), values_(std::move(values)) {
    if (keys_.size() != values_.size()) throw Error("degree: key/value length mismatch");
  }

  static Degree zero(std::vector<std::size_t> keys) {
    std::vector<std::int64_t> v(keys.size(), 0);
    return Degree(std::move(keys), std::move(v));
  }

  /// Parses "d1,d2,..." (empty text is the empty degree).
  static Degree parse(std::string_view text, std::vector<std::size_t> keys) {
    std::vector<std::int64_t> values;
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (!s.empty()) {
      std::stringstream in(s);
      std::string item;
      while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        std::int64_t x = 0;
        try {
          x = std::stoll(item, &used);
        } catch (const std::exception&) {
          throw ParseError("bad degree component '" + item + "'");
        }
        if (used != item.size()) throw ParseError("bad degree component '" + item + "'");
        values.push_back(x);
      }
    }
    if (values.size() != keys.size())
      throw ParseError("degree '" + std::string(text) + "' has " + std::to_string(values.size()) +
                       " components, expected " + std::to_string(keys.size()));
    return Degree(std::move(keys), std::move(values));
  }

  const std::vector<std::size_t>& keys() const { return keys_; }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::int64_t operator[](std::size_t k) const { return values_[k]; }
  std::int64_t& operator[](std::size_t k) { return values_[k]; }

  std::int64_t at_root(std::size_t beta) const {
    auto it = std::find(keys_.begin(), keys_.end(), beta);
    if (it == keys_.end()) throw Error("degree has no component at simple root " + std::to_string(beta + 1));
    return values_[static_cast<std::size_t>(it - keys_.begin())];
  }

  std::int64_t total() const { return std::accumulate(values_.begin(), values_.end(), std::int64_t{0}); }
  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](auto x) { return x == 0; });
  }
  bool is_effective() const {
    return std::all_of(values_.begin(), values_.end(), [](auto x) { return x >= 0; });
  }

  /// Componentwise partial order.
  bool leq(const Degree& other) const {
    check_keys(other);
    for (std::size_t k = 0; k < values_.size(); ++k)
      if (values_[k] > other.values_[k]) return false;
    return true;
  }

  Degree operator+(const Degree& other) const {
    check_keys(other);
    Degree out = *this;
    for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] += other.values_[k];
    return out;
  }

  bool operator==(const Degree&) const = default;
  /// Lexicographic on values; a total order for ordered containers only.
  bool operator<(const Degree& other) const {
    if (keys_ != other.keys_) return keys_ < other.keys_;
    return values_ < other.values_;
  }

  /// "1,0,2"; the empty degree prints as "".
  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(values_[k]);
    }
    return out;
  }

  void check_keys(const Degree& other) const {
    if (keys_ != other.keys_) throw Error("degrees live in different H_2 lattices");
  }

 private:
  std::vector<std::size_t> keys_;
  std::vector<std::int64_t> values_;
};

/// All effective degrees d <= cap, in lexicographic order.
inline std::vector<Degree> degrees_below(const Degree& cap) {
  if (!cap.is_effective()) throw Error("degree cap must be effective");
  std::vector<Degree> out;
  Degree d = Degree::zero(cap.keys());
  while (true) {
    out.push_back(d);
    std::size_t k = d.size();
    while (k > 0) {
      --k;
      if (d[k] < cap[k]) {
        ++d[k];
        for (std::size_t j = k + 1; j < d.size(); ++j) d[j] = 0;
        break;
      }
      if (k == 0) return out;
    }
    if (d.size() == 0) return out;
  }
}

}  // namespace qkdist
