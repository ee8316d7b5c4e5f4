#pragma once

// Bijections of the radical basis B = {e_xy : x < y} and scalar functions on
// the strict pairs X^2_<.

#include <map>
#include <optional>
#include <set>
#include <string>

#include "incalg/error.hpp"
#include "incalg/poset.hpp"

namespace incalg {

/// Scalar-valued function on strict pairs (sigma, c).
template <class Scalar>
using PairMap = std::map<Pair, Scalar>;

class BasisBijection {
 public:
  BasisBijection() = default;

  static BasisBijection identity(const Poset& p) {
    BasisBijection b;
    for (const auto& s : p.strict_pairs()) b.map_.emplace(s, s);
    return b;
  }

  /// Validates that `m` is a bijection from the strict pairs of `p` onto themselves.
  static BasisBijection from_map(const Poset& p, std::map<Pair, Pair> m) {
    std::set<Pair> strict(p.strict_pairs().begin(), p.strict_pairs().end());
    std::set<Pair> seen;
    for (const auto& [a, b] : m) {
      if (!strict.count(a) || !strict.count(b))
        throw Error(ErrorKind::NotStrictlyComparable, "theta is defined only on strict pairs");
      if (!seen.insert(b).second) throw Error(ErrorKind::ThetaNotBijective, "theta is not injective");
    }
    if (m.size() != strict.size()) throw Error(ErrorKind::ThetaNotBijective, "theta is not defined on every strict pair");
    BasisBijection b;
    b.map_ = std::move(m);
    return b;
  }

  const Pair& operator()(const Pair& p) const {
    auto it = map_.find(p);
    if (it == map_.end()) throw Error(ErrorKind::NotStrictlyComparable, "theta applied outside its domain");
    return it->second;
  }

  BasisBijection inverse() const {
    BasisBijection b;
    for (const auto& [x, y] : map_) b.map_.emplace(y, x);
    return b;
  }

  bool is_identity() const {
    for (const auto& [x, y] : map_)
      if (!(x == y)) return false;
    return true;
  }

  const std::map<Pair, Pair>& map() const { return map_; }
  friend bool operator==(const BasisBijection&, const BasisBijection&) = default;

 private:
  std::map<Pair, Pair> map_;
};

}  // namespace incalg
