#pragma once

// Seeded generators of posets, preserver data (theta, sigma, c, kappa), shift
// data and assorted linear maps, for property tests and the oracle suite.

#include <algorithm>
#include <numeric>
#include <optional>
#include <map>
#include <random>
#include <set>
#include <type_traits>
#include <vector>

#include "incalg/synthesis.hpp"

namespace incalg::gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Connected poset on n elements labelled 1..n; the order is random and need
/// not agree with the labelling.
inline Poset random_connected_poset(Rng& rng, std::size_t n) {
  while (true) {
    std::vector<Vertex> ext(n);
    std::iota(ext.begin(), ext.end(), 0);
    std::shuffle(ext.begin(), ext.end(), rng);
    double density = std::uniform_real_distribution<double>(0.3, 0.8)(rng);
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::bernoulli_distribution(density)(rng)) rel[ext[i]][ext[j]] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (rel[i][k] && rel[k][j]) rel[i][j] = true;
    std::vector<std::pair<Vertex, Vertex>> covers;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!rel[i][j]) continue;
        bool cover = true;
        for (std::size_t k = 0; k < n && cover; ++k)
          if (rel[i][k] && rel[k][j]) cover = false;
        if (cover) covers.emplace_back(i, j);
      }
    try {
      return Poset::from_covers(n, covers);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotConnected) throw;
    }
  }
}

inline Poset chain(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> covers;
  for (std::size_t i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return Poset::from_covers(n, covers);
}

/// Every connected poset on n <= 4 labelled elements whose order is
/// compatible with the labelling (x < y implies label(x) < label(y)), up to
/// relabelling-free duplicates.
inline std::vector<Poset> small_posets(std::size_t max_n) {
  std::vector<Poset> out;
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::vector<std::pair<Vertex, Vertex>> candidates;
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j) candidates.emplace_back(i, j);
    for (std::size_t mask = 0; mask < (std::size_t{1} << candidates.size()); ++mask) {
      std::vector<std::pair<Vertex, Vertex>> covers;
      for (std::size_t k = 0; k < candidates.size(); ++k)
        if (mask >> k & 1) covers.push_back(candidates[k]);
      try {
        out.push_back(Poset::from_covers(n, covers));
      } catch (const Error&) {
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scalars

template <ExactField F>
typename F::value_type random_scalar(Rng& rng, const F& K) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    return K.from_int(static_cast<long>(uniform(rng, 0, K.modulus() - 1)));
  } else {
    long num = static_cast<long>(uniform(rng, 0, 8)) - 4;
    long den = static_cast<long>(uniform(rng, 1, 3));
    return K.from_int(num) * K.inv(K.from_int(den));
  }
}

template <ExactField F>
typename F::value_type random_nonzero(Rng& rng, const F& K) {
  while (true) {
    auto s = random_scalar(rng, K);
    if (!K.is_zero(s)) return s;
  }
}

// ---------------------------------------------------------------------------
// Monotone bijections of B

namespace detail {

inline bool assign_chain(std::map<Pair, Pair>& th, std::set<Pair>& used,
                         const std::vector<Vertex>& u, const std::vector<Vertex>& v, bool reversed,
                         std::vector<Pair>& added) {
  const std::size_t m = u.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Pair src{u[i], u[j]};
      Pair dst = reversed ? Pair{v[m - 1 - j], v[m - 1 - i]} : Pair{v[i], v[j]};
      if (auto it = th.find(src); it != th.end()) {
        if (!(it->second == dst)) return false;
        continue;
      }
      if (used.count(dst)) return false;
      th.emplace(src, dst);
      used.insert(dst);
      added.push_back(src);
    }
  return true;
}

}  // namespace detail

/// Bijections of B that are monotone on maximal chains, by backtracking over
/// an image chain and direction for each maximal chain. Stops after `limit`.
inline std::vector<BasisBijection> monotone_bijections(const Poset& P, std::size_t limit = 5000) {
  const auto& chains = P.maximal_chains();
  std::vector<BasisBijection> out;
  std::map<Pair, Pair> th;
  std::set<Pair> used;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (out.size() >= limit) return;
    if (k == chains.size()) {
      if (th.size() == P.strict_pairs().size()) {
        auto b = BasisBijection::from_map(P, th);
        if (theta_is_monotone(P, b).monotone) out.push_back(std::move(b));
      }
      return;
    }
    const auto& u = chains[k];
    for (const auto& v : chains) {
      if (v.size() != u.size()) continue;
      for (bool reversed : {false, true}) {
        if (reversed && u.size() == 2) continue;
        std::vector<Pair> added;
        if (detail::assign_chain(th, used, u, v, reversed, added)) self(self, k + 1);
        for (const auto& a : added) {
          used.erase(th.at(a));
          th.erase(a);
        }
      }
    }
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Preserver data

template <ExactField F>
struct TauData {
  using Scalar = typename F::value_type;
  BasisBijection theta;
  PairMap<Scalar> sigma;
  PairMap<Scalar> c;
  Kappa<F> kappa;
};

namespace detail {

/// Chains sharing a strict pair must carry the same c; returns a component
/// id per maximal chain.
inline std::vector<std::size_t> chain_components(const Poset& P) {
  const auto& chains = P.maximal_chains();
  std::vector<std::size_t> parent(chains.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto pairs_of = [](const std::vector<Vertex>& ch) {
    std::set<Pair> s;
    for (std::size_t i = 0; i < ch.size(); ++i)
      for (std::size_t j = i + 1; j < ch.size(); ++j) s.insert({ch[i], ch[j]});
    return s;
  };
  for (std::size_t a = 0; a < chains.size(); ++a)
    for (std::size_t b = a + 1; b < chains.size(); ++b) {
      auto pa = pairs_of(chains[a]), pb = pairs_of(chains[b]);
      for (const auto& p : pa)
        if (pb.count(p)) {
          parent[find(a)] = find(b);
          break;
        }
    }
  std::vector<std::size_t> comp(chains.size());
  for (std::size_t a = 0; a < chains.size(); ++a) comp[a] = find(a);
  return comp;
}

template <ExactField F>
PairMap<typename F::value_type> random_chain_constant_c(Rng& rng, const F& K, const Poset& P, bool constant) {
  const auto& chains = P.maximal_chains();
  auto comp = chain_components(P);
  std::map<std::size_t, typename F::value_type> value;
  auto k = random_nonzero(rng, K);
  PairMap<typename F::value_type> c;
  for (std::size_t a = 0; a < chains.size(); ++a) {
    if (!value.count(comp[a])) value.emplace(comp[a], constant ? k : random_nonzero(rng, K));
    const auto& ch = chains[a];
    for (std::size_t i = 0; i < ch.size(); ++i)
      for (std::size_t j = i + 1; j < ch.size(); ++j) c[{ch[i], ch[j]}] = value.at(comp[a]);
  }
  return c;
}

/// sigma on covers from `seed`, extended to longer pairs through the first
/// intermediate element; nullopt when the triples disagree.
template <ExactField F>
std::optional<PairMap<typename F::value_type>> extend_sigma(const F& K, const Poset& P, const BasisBijection& th,
                                                            const PairMap<typename F::value_type>& c,
                                                            PairMap<typename F::value_type> sigma) {
  std::vector<Pair> pairs = P.strict_pairs();
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const Pair& a, const Pair& b) { return P.length(a.lo, a.hi) < P.length(b.lo, b.hi); });
  for (const auto& s : pairs) {
    if (sigma.count(s)) continue;
    for (Vertex y = 0; y < P.size(); ++y)
      if (P.less(s.lo, y) && P.less(y, s.hi)) {
        const auto &a = th({s.lo, y}), &b = th({y, s.hi}), &t = th(s);
        auto sign = pair_product(a, b) == std::optional<Pair>(t) ? K.one() : -K.one();
        sigma[s] = sign * sigma.at({s.lo, y}) * sigma.at({y, s.hi}) * K.inv(c.at(s));
        break;
      }
  }
  auto rep = check_c_compatibility(K, P, th, sigma, c);
  if (!rep.compatible) return std::nullopt;
  for (const auto& [p, v] : rep.c)
    if (!(c.at(p) == v)) return std::nullopt;
  return sigma;
}

}  // namespace detail

/// Random valid (theta, sigma, c, kappa) on P, or nullopt if none was found
/// within the attempt budget. `constant_c` forces c to be a single constant.
template <ExactField F>
std::optional<TauData<F>> random_tau_data(Rng& rng, const F& K, const Poset& P, bool constant_c = false,
                                          std::size_t attempts = 60) {
  auto thetas = monotone_bijections(P, 2000);
  if (thetas.empty()) return std::nullopt;
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    // bias towards the identity now and then
    const auto& th = attempt % 4 == 3 ? thetas.front() : thetas[uniform(rng, 0, thetas.size() - 1)];
    auto c = detail::random_chain_constant_c(rng, K, P, constant_c);
    if (!check_admissible(K, P, th, c).admissible) continue;
    std::optional<PairMap<typename F::value_type>> sigma;
    for (int tries = 0; tries < 4 && !sigma; ++tries) {
      PairMap<typename F::value_type> seed;
      for (const auto& cov : P.covers()) seed[cov] = random_nonzero(rng, K);
      sigma = detail::extend_sigma(K, P, th, c, seed);
    }
    if (!sigma) {
      // sigma(x,y) = rho c(x,y) f(x)/f(y), rho = -1 where theta reverses a chain
      std::vector<typename F::value_type> f;
      for (Vertex v = 0; v < P.size(); ++v) f.push_back(random_nonzero(rng, K));
      auto mono = theta_is_monotone(P, th);
      PairMap<typename F::value_type> seed;
      bool clash = false;
      for (const auto& ci : mono.per_chain)
        for (std::size_t i = 0; i + 1 < ci.chain.size(); ++i) {
          Pair cov{ci.chain[i], ci.chain[i + 1]};
          auto rho = ci.direction == ChainDirection::Decreasing ? -K.one() : K.one();
          auto val = rho * c.at(cov) * f[cov.lo] * K.inv(f[cov.hi]);
          auto [it, ins] = seed.emplace(cov, val);
          if (!ins && !(it->second == val)) clash = true;
        }
      if (!clash) sigma = detail::extend_sigma(K, P, th, c, seed);
    }
    if (!sigma) continue;
    Kappa<F> kappa;
    do {
      kappa.clear();
      for (Vertex v = 0; v < P.size(); ++v) kappa.push_back(random_scalar(rng, K));
    } while (K.is_zero(std::accumulate(kappa.begin(), kappa.end(), K.zero())));
    return TauData<F>{th, *sigma, c, kappa};
  }
  return std::nullopt;
}

/// alpha satisfying conditions (1)-(3): a random element of the solution space.
template <ExactField F>
ShiftData<F> random_comm_alpha(Rng& rng, const AlgebraPtr<F>& alg) {
  const auto& K = alg->field();
  auto basis = kernel(K, alpha_constraint_system(alg));
  std::vector<typename F::value_type> a(alg->dim() * alg->n(), K.zero());
  for (const auto& v : basis) {
    auto t = random_scalar(rng, K);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] + t * v[i];
  }
  return ShiftData<F>::from_coordinates(alg, a);
}

/// alpha giving a strong bijective shift (conditions (1)-(5)).
template <ExactField F>
ShiftData<F> random_shift_alpha(Rng& rng, const AlgebraPtr<F>& alg) {
  while (true) {
    auto a = random_comm_alpha(rng, alg);
    auto rep = validate_alpha(a);
    if (rep.strong && rep.bijective) return a;
  }
}

/// Arbitrary diagonal-valued alpha, mostly violating (1)-(3).
template <ExactField F>
ShiftData<F> random_any_alpha(Rng& rng, const AlgebraPtr<F>& alg, double density = 0.3) {
  const auto& K = alg->field();
  std::vector<typename F::value_type> a(alg->dim() * alg->n(), K.zero());
  for (auto& s : a)
    if (std::bernoulli_distribution(density)(rng)) s = random_scalar(rng, K);
  return ShiftData<F>::from_coordinates(alg, a);
}

/// Inner automorphism f -> g f g^-1 for a random unipotent g = delta + h.
template <ExactField F>
LinearMap<F> random_inner(Rng& rng, const AlgebraPtr<F>& alg) {
  const auto& K = alg->field();
  auto g = Element<F>::identity(alg);
  for (std::size_t i = alg->n(); i < alg->dim(); ++i) g.set(i, random_scalar(rng, K));
  auto ginv = unipotent_inverse(g);
  std::vector<Element<F>> im;
  for (std::size_t j = 0; j < alg->dim(); ++j) im.push_back(g * Element<F>::basis(alg, j) * ginv);
  return LinearMap<F>::from_images(alg, im);
}

/// Copy of L with one random entry replaced by a random scalar.
template <ExactField F>
LinearMap<F> perturb(Rng& rng, const LinearMap<F>& L) {
  auto m = L.matrix();
  auto i = uniform(rng, 0, m.rows() - 1), j = uniform(rng, 0, m.cols() - 1);
  m(i, j) = m(i, j) + random_nonzero(rng, L.field());
  return LinearMap<F>(L.algebra(), std::move(m));
}

/// Random matrix with the given density of nonzero entries.
template <ExactField F>
LinearMap<F> random_matrix(Rng& rng, const AlgebraPtr<F>& alg, double density) {
  Matrix<F> m(alg->dim(), alg->dim(), alg->field());
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = 0; j < alg->dim(); ++j)
      if (std::bernoulli_distribution(density)(rng)) m(i, j) = random_scalar(rng, alg->field());
  return LinearMap<F>(alg, std::move(m));
}

template <ExactField F>
Element<F> random_element(Rng& rng, const AlgebraPtr<F>& alg) {
  Element<F> e(alg);
  for (std::size_t i = 0; i < alg->dim(); ++i) e.set(i, random_scalar(rng, alg->field()));
  return e;
}

template <ExactField F>
Element<F> random_diagonal(Rng& rng, const AlgebraPtr<F>& alg) {
  Element<F> e(alg);
  for (Vertex x = 0; x < alg->n(); ++x) e.set(x, random_scalar(rng, alg->field()));
  return e;
}

/// A mixture of maps for oracle comparison: valid shifts composed with pure
/// preservers and inner automorphisms, arbitrary shifts, perturbations and
/// sparse random matrices.
template <ExactField F>
LinearMap<F> random_test_map(Rng& rng, const AlgebraPtr<F>& alg) {
  auto base = [&]() -> LinearMap<F> {
    switch (uniform(rng, 0, 5)) {
      case 0: return shift_map(random_comm_alpha(rng, alg));
      case 1: return shift_map(random_any_alpha(rng, alg));
      case 2:
      case 3: {
        auto data = random_tau_data(rng, alg->field(), alg->poset(), false, 20);
        auto map = data ? build_tau(alg, data->theta, data->sigma, data->c, data->kappa) : LinearMap<F>::identity(alg);
        map = shift_map(random_comm_alpha(rng, alg)).compose(map);
        if (uniform(rng, 0, 1)) map = random_inner(rng, alg).compose(map);
        return map;
      }
      case 4: return random_inner(rng, alg).compose(shift_map(random_comm_alpha(rng, alg)));
      default: return random_matrix(rng, alg, 0.25);
    }
  }();
  if (uniform(rng, 0, 3) == 0) return perturb(rng, base);
  return base;
}

}  // namespace incalg::gen
