#pragma once

// Predicates on the data (theta, sigma, c) of a pure preserver, and shift maps
// S_alpha(f) = f + alpha(f) with alpha: I(X,K) -> D(X,K).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incalg/algebra.hpp"
#include "incalg/analysis.hpp"
#include "incalg/bijection.hpp"

namespace incalg {

// ---------------------------------------------------------------------------
// Monotonicity on maximal chains

enum class ChainDirection { Increasing, Decreasing, Neither };

inline std::string to_string(ChainDirection d) {
  switch (d) {
    case ChainDirection::Increasing: return "increasing";
    case ChainDirection::Decreasing: return "decreasing";
    default: return "neither";
  }
}

struct ChainImage {
  std::vector<Vertex> chain;
  ChainDirection direction = ChainDirection::Neither;
  std::vector<Vertex> image;  ///< v_1 < ... < v_m when monotone
};

struct MonotoneReport {
  bool monotone = true;
  std::vector<ChainImage> per_chain;
};

namespace detail {

/// Candidate v-chain for chain u; `reversed` selects the decreasing pattern.
inline std::optional<std::vector<Vertex>> image_chain(const Poset& P, const BasisBijection& th,
                                                      const std::vector<Vertex>& u, bool reversed) {
  const std::size_t m = u.size();
  std::vector<Vertex> v(m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto& img = th({u[i], u[i + 1]});
    // increasing: img = (v_i, v_{i+1}); decreasing: img = (v_{m-i-1}, v_{m-i}) (0-based)
    std::size_t lo = reversed ? m - i - 2 : i;
    if (i > 0 && v[reversed ? lo + 1 : lo] != (reversed ? img.hi : img.lo)) return std::nullopt;
    v[lo] = img.lo;
    v[lo + 1] = img.hi;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Pair want = reversed ? Pair{v[m - 1 - j], v[m - 1 - i]} : Pair{v[i], v[j]};
      if (!(th({u[i], u[j]}) == want)) return std::nullopt;
    }
  if (!P.is_maximal_chain(v)) return std::nullopt;
  return v;
}

}  // namespace detail

inline MonotoneReport theta_is_monotone(const Poset& P, const BasisBijection& th) {
  MonotoneReport rep;
  for (const auto& chain : P.maximal_chains()) {
    ChainImage ci{chain, ChainDirection::Neither, {}};
    if (auto v = detail::image_chain(P, th, chain, false)) {
      ci.direction = ChainDirection::Increasing;
      ci.image = *v;
    } else if (auto w = detail::image_chain(P, th, chain, true)) {
      ci.direction = ChainDirection::Decreasing;
      ci.image = *w;
    } else {
      rep.monotone = false;
    }
    rep.per_chain.push_back(std::move(ci));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// c-compatibility and chain constancy

/// Product of basis elements e_a e_b as a pair, if nonzero.
inline std::optional<Pair> pair_product(const Pair& a, const Pair& b) {
  if (a.hi != b.lo) return std::nullopt;
  return Pair{a.lo, b.hi};
}

template <ExactField F>
struct CompatReport {
  using Scalar = typename F::value_type;
  bool compatible = true;
  std::optional<ErrorKind> failure;  ///< InconsistentTriples, NotTransported or ZeroC
  std::string witness;
  PairMap<Scalar> c;
};

/// For every x < y < z, c(x,z) = +-sigma(x,y)sigma(y,z)/sigma(x,z), the sign
/// given by the order in which theta(e_xy), theta(e_yz) multiply to theta(e_xz).
/// A cover takes the value of its first maximal chain of length >= 2, or on a
/// bare-cover chain the value in `cover_values` (default 1).
template <ExactField F>
CompatReport<F> check_c_compatibility(const F& K, const Poset& P, const BasisBijection& th,
                                      const PairMap<typename F::value_type>& sigma,
                                      const PairMap<typename F::value_type>& cover_values = {}) {
  CompatReport<F> rep;
  auto key = [&](Vertex a, Vertex b) { return "(" + P.label(a) + "," + P.label(b) + ")"; };
  auto fail = [&](ErrorKind k, std::string w) {
    rep.compatible = false;
    rep.failure = k;
    rep.witness = std::move(w);
    return rep;
  };
  for (const auto& s : P.strict_pairs()) {
    auto it = sigma.find(s);
    if (it == sigma.end()) throw Error(ErrorKind::SchemaError, "sigma missing at " + key(s.lo, s.hi));
    if (K.is_zero(it->second)) return fail(ErrorKind::ZeroC, "sigma" + key(s.lo, s.hi) + " = 0");
  }
  for (const auto& s : P.strict_pairs()) {
    const Vertex x = s.lo, z = s.hi;
    for (Vertex y = 0; y < P.size(); ++y) {
      if (!P.less(x, y) || !P.less(y, z)) continue;
      const auto &a = th({x, y}), &b = th({y, z}), &t = th({x, z});
      typename F::value_type sign;
      if (auto p = pair_product(a, b); p && *p == t)
        sign = K.one();
      else if (auto q = pair_product(b, a); q && *q == t)
        sign = -K.one();
      else
        return fail(ErrorKind::NotTransported, "theta does not transport the triple " + P.label(x) + "<" +
                                                   P.label(y) + "<" + P.label(z));
      auto val = sign * sigma.at({x, y}) * sigma.at({y, z}) * K.inv(sigma.at({x, z}));
      auto [pos, inserted] = rep.c.emplace(Pair{x, z}, val);
      if (!inserted && !(pos->second == val))
        return fail(ErrorKind::InconsistentTriples, "triples through " + key(x, z) + " force different c values");
    }
  }
  for (const auto& cov : P.covers()) {
    std::optional<typename F::value_type> val;
    for (const auto& chain : P.maximal_chains()) {
      if (chain.size() < 3) continue;
      for (std::size_t i = 0; i + 1 < chain.size() && !val; ++i)
        if (chain[i] == cov.lo && chain[i + 1] == cov.hi) val = rep.c.at({chain.front(), chain.back()});
      if (val) break;
    }
    if (!val) {
      auto it = cover_values.find(cov);
      val = it == cover_values.end() ? K.one() : it->second;
      if (K.is_zero(*val)) return fail(ErrorKind::ZeroC, "c" + key(cov.lo, cov.hi) + " = 0");
    }
    rep.c.emplace(cov, *val);
  }
  return rep;
}

struct ChainConstancy {
  bool constant = true;
  std::vector<Vertex> witness;  ///< a maximal chain on which c varies
};

template <ExactField F>
ChainConstancy check_c_constant_on_chains(const Poset& P, const PairMap<typename F::value_type>& c) {
  for (const auto& chain : P.maximal_chains()) {
    if (chain.size() < 2) continue;
    const auto& ref = c.at({chain.front(), chain.back()});
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = i + 1; j < chain.size(); ++j)
        if (!(c.at({chain[i], chain[j]}) == ref)) return {false, chain};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Walk sums and admissibility

template <ExactField F>
struct WalkSums {
  typename F::value_type s_plus, s_minus, t_plus, t_minus;
  /// -s+ + s- + t+ - t-: the change of phi(e_z) along the walk.
  typename F::value_type circulation() const { return -s_plus + s_minus + t_plus - t_minus; }
  /// s+ - s- = t+ - t-
  bool balanced() const { return s_plus - s_minus == t_plus - t_minus; }
};

/// The four sums for z along Γ. A step u_i -> u_{i+1} over the cover with
/// theta-preimage e_vw contributes c(v,w) to s+ (up, z = v), s- (down, z = v),
/// t+ (up, z = w) or t- (down, z = w).
template <ExactField F>
WalkSums<F> walk_sums(const F& K, const Poset& P, const BasisBijection& th, const PairMap<typename F::value_type>& c,
                      const Walk& gamma, Vertex z) {
  if (!P.is_walk(gamma)) throw Error(ErrorKind::SchemaError, "not a walk in the Hasse diagram");
  auto inv = th.inverse();
  WalkSums<F> ws{K.zero(), K.zero(), K.zero(), K.zero()};
  for (std::size_t i = 0; i + 1 < gamma.vertices.size(); ++i) {
    Vertex a = gamma.vertices[i], b = gamma.vertices[i + 1];
    bool up = P.less(a, b);
    const auto& pre = inv(up ? Pair{a, b} : Pair{b, a});
    const auto& cv = c.at(pre);
    if (pre.lo == z) (up ? ws.s_plus : ws.s_minus) += cv;
    if (pre.hi == z) (up ? ws.t_plus : ws.t_minus) += cv;
  }
  return ws;
}

template <ExactField F>
struct AdmissibleReport {
  bool admissible = true;
  std::optional<Walk> cycle;  ///< witness cycle
  std::optional<Vertex> z;    ///< witness element
  std::optional<WalkSums<F>> sums;
};

/// Balance on every fundamental cycle, for every z. Each step contributes a
/// value fixed by its directed Hasse edge and negated under reversal, so the
/// cycle basis decides all closed walks.
template <ExactField F>
AdmissibleReport<F> check_admissible(const F& K, const Poset& P, const BasisBijection& th,
                                     const PairMap<typename F::value_type>& c) {
  AdmissibleReport<F> rep;
  for (const auto& cyc : P.fundamental_cycles())
    for (Vertex z = 0; z < P.size(); ++z) {
      auto ws = walk_sums(K, P, th, c, cyc, z);
      if (!ws.balanced()) {
        rep.admissible = false;
        rep.cycle = cyc;
        rep.z = z;
        rep.sums = ws;
        return rep;
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Shift maps

/// alpha: I(X,K) -> D(X,K), stored as the images of the canonical basis.
template <ExactField F>
class ShiftData {
 public:
  ShiftData() = default;
  ShiftData(AlgebraPtr<F> alg, std::vector<Element<F>> images) : alg_(std::move(alg)), images_(std::move(images)) {
    if (images_.size() != alg_->dim()) throw Error(ErrorKind::SchemaError, "alpha needs one image per basis vector");
    for (std::size_t j = 0; j < images_.size(); ++j) {
      images_[j].check_same(Element<F>(alg_));
      if (!images_[j].is_diagonal())
        throw Error(ErrorKind::NotDiagonalValued, "alpha(" + alg_->basis_name(j) + ") is not diagonal");
    }
  }
  static ShiftData zero(AlgebraPtr<F> alg) {
    std::vector<Element<F>> im(alg->dim(), Element<F>(alg));
    return ShiftData(alg, std::move(im));
  }
  /// Coordinates a[j * n + x] = alpha(b_j)(x, x).
  static ShiftData from_coordinates(AlgebraPtr<F> alg, const std::vector<typename F::value_type>& a) {
    const std::size_t n = alg->n();
    std::vector<Element<F>> im;
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      Element<F> e(alg);
      for (Vertex x = 0; x < n; ++x) e.set(x, a[j * n + x]);
      im.push_back(std::move(e));
    }
    return ShiftData(alg, std::move(im));
  }
  std::vector<typename F::value_type> coordinates() const {
    const std::size_t n = alg_->n();
    std::vector<typename F::value_type> a(alg_->dim() * n, alg_->field().zero());
    for (std::size_t j = 0; j < images_.size(); ++j)
      for (Vertex x = 0; x < n; ++x) a[j * n + x] = images_[j][x];
    return a;
  }

  const AlgebraPtr<F>& algebra() const { return alg_; }
  const std::vector<Element<F>>& images() const { return images_; }
  const Element<F>& operator[](std::size_t j) const { return images_[j]; }

  Element<F> apply(const Element<F>& f) const {
    Element<F> r(alg_);
    for (const auto& [j, s] : f.coeffs()) r = r + s * images_[j];
    return r;
  }
  ShiftData operator-() const {
    auto im = images_;
    for (auto& e : im) e = -e;
    return ShiftData(alg_, std::move(im));
  }
  friend bool operator==(const ShiftData& a, const ShiftData& b) { return a.images_ == b.images_; }

 private:
  AlgebraPtr<F> alg_;
  std::vector<Element<F>> images_;
};

/// f -> f + alpha(f), without validation.
template <ExactField F>
LinearMap<F> shift_map(const ShiftData<F>& a) {
  std::vector<Element<F>> im;
  for (std::size_t j = 0; j < a.algebra()->dim(); ++j) im.push_back(Element<F>::basis(a.algebra(), j) + a[j]);
  return LinearMap<F>::from_images(a.algebra(), im);
}

struct AlphaReport {
  /// cond[0..4]: the three commutativity conditions, strongness, alpha(delta) != -delta
  bool cond[5] = {true, true, true, true, true};
  bool comm_preserver = false;
  bool strong = false;
  bool bijective = false;
  std::vector<std::string> violations;
};

/// (1) [alpha(e_xy), e_uv] = 0 for e_xy != e_uv in B;
/// (2) [alpha(e_z), e_xy] = 0 when z not in {x,y} or l(x,y) > 1;
/// (3) [alpha(e_x), e_xy] = [e_xy, alpha(e_y)] on covers;
/// (4) [alpha(e_x), e_xy] != -e_xy on covers;
/// (5) alpha(delta) != -delta.
template <ExactField F>
AlphaReport validate_alpha(const ShiftData<F>& a) {
  const auto& alg = a.algebra();
  const auto& P = alg->poset();
  AlphaReport rep;
  auto E = [&](std::size_t i) { return Element<F>::basis(alg, i); };
  auto violate = [&](int k, std::string what) {
    rep.cond[k] = false;
    rep.violations.push_back("condition " + std::to_string(k + 1) + ": " + std::move(what));
  };
  const std::size_t n = alg->n();
  for (std::size_t j = n; j < alg->dim(); ++j)
    for (std::size_t k = n; k < alg->dim(); ++k)
      if (j != k && !bracket(a[j], E(k)).is_zero())
        violate(0, "[alpha(" + alg->basis_name(j) + ")," + alg->basis_name(k) + "] != 0");
  for (Vertex z = 0; z < n; ++z)
    for (const auto& s : P.strict_pairs())
      if ((z != s.lo && z != s.hi) || P.length(s.lo, s.hi) > 1)
        if (!bracket(a[z], E(alg->index(s))).is_zero())
          violate(1, "[alpha(" + alg->basis_name(z) + ")," + alg->basis_name(alg->index(s)) + "] != 0");
  for (const auto& cov : P.covers()) {
    auto xy = E(alg->index(cov));
    auto lhs = bracket(a[cov.lo], xy);
    if (!(lhs == bracket(xy, a[cov.hi]))) violate(2, "cover " + alg->pair_key(cov));
    if (lhs == -xy) violate(3, "[alpha(e_x),e_xy] = -e_xy at " + alg->pair_key(cov));
  }
  auto delta = Element<F>::identity(alg);
  if (a.apply(delta) == -delta) violate(4, "alpha(delta) = -delta");
  rep.comm_preserver = rep.cond[0] && rep.cond[1] && rep.cond[2];
  rep.strong = rep.comm_preserver && rep.cond[3];
  rep.bijective = rep.strong ? rep.cond[4] : is_bijective(shift_map(a));
  return rep;
}

/// S_alpha; alpha must define a commutativity preserver.
template <ExactField F>
LinearMap<F> build_shift(const ShiftData<F>& a) {
  auto rep = validate_alpha(a);
  if (!rep.comm_preserver)
    throw Error(ErrorKind::InvalidAlpha, rep.violations.empty() ? "alpha invalid" : rep.violations.front());
  return shift_map(a);
}

/// Homogeneous linear system in the coordinates a[j*n+x] = alpha(b_j)(x,x)
/// whose solutions are exactly the alpha satisfying conditions (1)-(3).
template <ExactField F>
Matrix<F> alpha_constraint_system(const AlgebraPtr<F>& alg) {
  const auto& K = alg->field();
  const auto& P = alg->poset();
  const std::size_t n = alg->n(), unknowns = alg->dim() * n;
  Matrix<F> m(0, unknowns, K);
  auto row = [&](std::initializer_list<std::pair<std::size_t, long>> terms) {
    std::vector<typename F::value_type> r(unknowns, K.zero());
    for (auto [i, v] : terms) r[i] = r[i] + K.from_int(v);
    m.append_row(r);
  };
  for (std::size_t j = n; j < alg->dim(); ++j)
    for (std::size_t k = n; k < alg->dim(); ++k)
      if (j != k) row({{j * n + alg->basis(k).lo, 1}, {j * n + alg->basis(k).hi, -1}});
  for (Vertex z = 0; z < n; ++z)
    for (const auto& s : P.strict_pairs())
      if ((z != s.lo && z != s.hi) || P.length(s.lo, s.hi) > 1) row({{z * n + s.lo, 1}, {z * n + s.hi, -1}});
  for (const auto& c : P.covers())
    row({{c.lo * n + c.lo, 1}, {c.lo * n + c.hi, -1}, {c.hi * n + c.lo, 1}, {c.hi * n + c.hi, -1}});
  return m;
}

}  // namespace incalg
