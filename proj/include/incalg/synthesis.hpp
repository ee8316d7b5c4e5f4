#pragma once

// Pure preservers tau_{theta,sigma,c,kappa}, the factorization
// phi = S_alpha o tau, Lie-type classification, and a search for a shift plus
// inner automorphism making a non-diagonality-preserving map preserve D(X,K).

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "incalg/analysis.hpp"
#include "incalg/structure.hpp"

namespace incalg {

template <ExactField F>
using Kappa = std::vector<typename F::value_type>;

namespace detail {

[[noreturn]] inline void precondition(const std::string& what) { throw Error(ErrorKind::PreconditionFailed, what); }

/// Change of tau(e_z)(.,.) along the step a -> b between adjacent elements.
template <ExactField F>
typename F::value_type step_delta(const F& K, const Poset& P, const BasisBijection& inv,
                                  const PairMap<typename F::value_type>& c, Vertex a, Vertex b, Vertex z) {
  bool up = P.less(a, b);
  const auto& pre = inv(up ? Pair{a, b} : Pair{b, a});
  const auto& cv = c.at(pre);
  if (z == pre.lo) return up ? -cv : cv;
  if (z == pre.hi) return up ? cv : -cv;
  return K.zero();
}

/// diag[z][v] = tau(e_z)(v,v), propagated along the BFS tree rooted at `root`
/// from the values at the root.
template <ExactField F>
std::vector<std::vector<typename F::value_type>> propagate(const F& K, const Poset& P, const BasisBijection& inv,
                                                           const PairMap<typename F::value_type>& c, Vertex root,
                                                           const std::vector<typename F::value_type>& at_root) {
  const std::size_t n = P.size();
  auto parent = P.bfs_tree(root);
  std::vector<Vertex> order{root};
  for (std::size_t k = 0; k < order.size(); ++k)
    for (Vertex y : P.hasse_neighbors(order[k]))
      if (parent[y] == order[k] && y != root) order.push_back(y);
  std::vector<std::vector<typename F::value_type>> diag(n, std::vector<typename F::value_type>(n, K.zero()));
  for (Vertex z = 0; z < n; ++z) {
    diag[z][root] = at_root[z];
    for (std::size_t k = 1; k < order.size(); ++k) {
      Vertex v = order[k];
      diag[z][v] = diag[z][parent[v]] + step_delta(K, P, inv, c, parent[v], v, z);
    }
  }
  return diag;
}

}  // namespace detail

/// The pure preserver with tau(e_xy) = sigma(x,y) theta(e_xy) and
/// tau(e_{x_i})(x_1,x_1) = k_i.
template <ExactField F>
LinearMap<F> build_tau(const AlgebraPtr<F>& alg, const BasisBijection& th, const PairMap<typename F::value_type>& sigma,
                       const PairMap<typename F::value_type>& c, const Kappa<F>& kappa) {
  const auto& K = alg->field();
  const auto& P = alg->poset();
  const std::size_t n = P.size();
  if (kappa.size() != n) detail::precondition("kappa must have one entry per element");
  for (const auto& s : P.strict_pairs()) {
    if (!sigma.count(s)) detail::precondition("sigma undefined at " + alg->pair_key(s));
    if (!c.count(s)) detail::precondition("c undefined at " + alg->pair_key(s));
    if (K.is_zero(c.at(s))) detail::precondition("c vanishes at " + alg->pair_key(s));
  }
  if (!theta_is_monotone(P, th).monotone) detail::precondition("theta is not monotone on maximal chains");
  if (auto cc = check_c_constant_on_chains<F>(P, c); !cc.constant)
    detail::precondition("c is not constant on maximal chains");
  auto compat = check_c_compatibility(K, P, th, sigma, c);
  if (!compat.compatible) detail::precondition("sigma is not c-compatible with theta: " + compat.witness);
  for (const auto& [p, v] : compat.c)
    if (!(c.at(p) == v)) detail::precondition("sigma is not c-compatible with theta for the given c at " + alg->pair_key(p));
  if (auto adm = check_admissible(K, P, th, c); !adm.admissible)
    detail::precondition("(theta, c) is not admissible at z = " + P.label(*adm.z));
  auto sum = std::accumulate(kappa.begin(), kappa.end(), K.zero());
  if (K.is_zero(sum)) detail::precondition("kappa sums to zero");

  auto inv = th.inverse();
  auto diag = detail::propagate(K, P, inv, c, 0, kappa);
  // second walk family: tree rooted at the last element
  const Vertex r = n - 1;
  std::vector<typename F::value_type> at_r(n);
  for (Vertex z = 0; z < n; ++z) at_r[z] = diag[z][r];
  auto again = detail::propagate(K, P, inv, c, r, at_r);
  if (again != diag) throw Error(ErrorKind::WellDefinednessViolation, "diagonal propagation depends on the walk");

  std::vector<Element<F>> images;
  for (Vertex z = 0; z < n; ++z) {
    Element<F> e(alg);
    for (Vertex v = 0; v < n; ++v) e.set(v, diag[z][v]);
    images.push_back(std::move(e));
  }
  for (const auto& s : P.strict_pairs()) images.push_back(sigma.at(s) * Element<F>::e(alg, th(s).lo, th(s).hi));
  auto tau = LinearMap<F>::from_images(alg, images);
  if (!check_commutativity_preserver(tau).holds || !is_strong_preserver(tau).strong || !is_bijective(tau) ||
      !is_diagonality_preserver(tau))
    throw Error(ErrorKind::WellDefinednessViolation, "synthesized map is not a bijective strong preserver");
  return tau;
}

template <ExactField F>
struct Decomposition {
  using Scalar = typename F::value_type;
  ShiftData<F> alpha;
  BasisBijection theta;
  PairMap<Scalar> sigma;
  PairMap<Scalar> c;
  Kappa<F> kappa;
};

namespace detail {

template <ExactField F>
void require_hypotheses(const LinearMap<F>& L, bool need_diagonality) {
  if (!is_bijective(L)) throw Error(ErrorKind::HypothesesNotMet, "map is not bijective");
  auto comm = check_commutativity_preserver(L);
  if (!comm.holds)
    throw Error(ErrorKind::HypothesesNotMet, "not a commutativity preserver: " + comm.violations.front().str());
  if (!is_strong_preserver(L).strong) throw Error(ErrorKind::HypothesesNotMet, "not a strong commutativity preserver");
  if (need_diagonality && !is_diagonality_preserver(L))
    throw Error(ErrorKind::HypothesesNotMet, "not a diagonality preserver");
}

}  // namespace detail

/// phi = S_alpha o tau with alpha|_D = 0 and alpha(theta(e_xy)) = sigma(x,y)^-1 nu(e_xy).
template <ExactField F>
Decomposition<F> decompose(const LinearMap<F>& L) {
  detail::require_hypotheses(L, true);
  const auto& alg = L.algebra();
  const auto& K = alg->field();
  auto inv = extract_invariants(L);
  std::vector<Element<F>> alpha_images(alg->dim(), Element<F>(alg));
  for (const auto& s : alg->poset().strict_pairs())
    alpha_images[alg->index(inv.theta(s))] = K.inv(inv.sigma.at(s)) * inv.nu.at(s);
  Decomposition<F> d{ShiftData<F>(alg, std::move(alpha_images)), inv.theta, inv.sigma, inv.c, {}};
  auto pure = build_shift(-d.alpha).compose(L);
  for (Vertex x = 0; x < alg->n(); ++x) d.kappa.push_back(pure.image(x)[0]);
  auto tau = build_tau(alg, d.theta, d.sigma, d.c, d.kappa);
  if (!(build_shift(d.alpha).compose(tau) == L))
    throw Error(ErrorKind::WellDefinednessViolation, "S_alpha o tau does not reproduce the map");
  return d;
}

template <ExactField F>
struct LieVerdict {
  bool lie_type = false;
  std::vector<std::string> reasons;  ///< why not, when not
  std::optional<typename F::value_type> k;
  std::optional<LinearMap<F>> psi;
  std::optional<LinearMap<F>> xi;
};

/// True iff every alpha(b) lies in span{delta}, i.e. a diagonal with all
/// coefficients equal.
template <ExactField F>
bool is_central(const Element<F>& e) {
  if (!e.is_diagonal()) return false;
  auto ref = e[0];
  for (Vertex x = 1; x < e.algebra()->n(); ++x)
    if (!(e[x] == ref)) return false;
  return true;
}

/// phi = k psi + xi with psi a Lie automorphism and xi central-valued iff alpha
/// is central-valued and c is a constant k.
template <ExactField F>
LieVerdict<F> is_lie_type(const LinearMap<F>& L) {
  auto d = decompose(L);
  const auto& alg = L.algebra();
  const auto& K = alg->field();
  LieVerdict<F> v;
  if (!std::all_of(d.alpha.images().begin(), d.alpha.images().end(), [](const auto& e) { return is_central(e); }))
    v.reasons.push_back("alpha not central-valued");
  const auto& k = d.c.begin()->second;
  if (!std::all_of(d.c.begin(), d.c.end(), [&](const auto& kv) { return kv.second == k; }))
    v.reasons.push_back("c non-constant");
  if (!v.reasons.empty()) return v;
  auto kinv = K.inv(k);
  std::vector<Element<F>> psi_im, xi_im;
  for (Vertex x = 0; x < alg->n(); ++x) {
    psi_im.push_back(kinv * L.image(x));
    xi_im.push_back(Element<F>(alg));
  }
  for (const auto& s : alg->poset().strict_pairs()) {
    const auto& uv = d.theta(s);
    psi_im.push_back(kinv * d.sigma.at(s) * Element<F>::e(alg, uv.lo, uv.hi));
    xi_im.push_back(d.sigma.at(s) * d.alpha[alg->index(uv)]);
  }
  auto psi = LinearMap<F>::from_images(alg, psi_im);
  auto xi = LinearMap<F>::from_images(alg, xi_im);
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      auto bi = Element<F>::basis(alg, i), bj = Element<F>::basis(alg, j);
      if (!(psi.apply(bracket(bi, bj)) == bracket(psi_im[i], psi_im[j])))
        throw Error(ErrorKind::WellDefinednessViolation, "psi does not preserve brackets");
    }
  if (!((k * psi) + xi == L)) throw Error(ErrorKind::WellDefinednessViolation, "L != k psi + xi");
  v.lie_type = true;
  v.k = k;
  v.psi = std::move(psi);
  v.xi = std::move(xi);
  return v;
}

// ---------------------------------------------------------------------------
// Conjecture search

template <ExactField F>
struct ExploreResult {
  bool found = false;
  ShiftData<F> alpha;                          ///< particular solution
  std::vector<ShiftData<F>> alpha_directions;  ///< alpha + span(directions) also works
  std::optional<Element<F>> conjugator;        ///< g with g (S_alpha L)(e_x) g^-1 diagonal
  std::vector<Element<F>> diagonalized;        ///< g (S_alpha L)(e_x) g^-1, one per x
  std::string note;
};

/// Inverse of g = delta + h, h strictly upper: sum of (-h)^k, k < n.
template <ExactField F>
Element<F> unipotent_inverse(const Element<F>& g) {
  const auto& alg = g.algebra();
  auto minus_h = Element<F>::identity(alg) - g;
  if (!minus_h.is_strictly_upper()) throw Error(ErrorKind::NotDiagonal, "not unipotent: " + g.str());
  auto sum = Element<F>::identity(alg), power = Element<F>::identity(alg);
  for (std::size_t k = 1; k < alg->n(); ++k) {
    power = power * minus_h;
    sum = sum + power;
  }
  return sum;
}

namespace detail {

/// Unipotent g = delta + h with g F_x = D_x g for all x, where D_x is the
/// diagonal part of F_x; then g F_x g^-1 = D_x.
template <ExactField F>
std::optional<Element<F>> unipotent_diagonalizer(const AlgebraPtr<F>& alg, const std::vector<Element<F>>& fs) {
  const auto& K = alg->field();
  const std::size_t n = alg->n(), d = alg->dim(), h = d - n;
  // unknowns: h coefficient on strict basis index n + t
  Matrix<F> m(0, h, K);
  std::vector<typename F::value_type> rhs;
  for (const auto& f : fs) {
    auto D = split_diag_jacobson(f).first;
    // (delta + h) f - D (delta + h) = (f - D) + (h f - D h)
    std::vector<std::vector<typename F::value_type>> cols;
    for (std::size_t t = 0; t < h; ++t) {
      auto e = Element<F>::basis(alg, n + t);
      cols.push_back((e * f - D * e).to_vector());
    }
    auto constant = (f - D).to_vector();
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<typename F::value_type> row(h, K.zero());
      for (std::size_t t = 0; t < h; ++t) row[t] = cols[t][i];
      m.append_row(row);
      rhs.push_back(-constant[i]);
    }
  }
  if (m.rows() == 0) return Element<F>::identity(alg);
  auto sol = solve(K, m, rhs);
  if (!sol) return std::nullopt;
  auto g = Element<F>::identity(alg);
  for (std::size_t t = 0; t < h; ++t) g.set(n + t, sol->particular[t]);
  return g;
}

template <ExactField F>
std::vector<Element<F>> diagonal_images(const LinearMap<F>& L) {
  std::vector<Element<F>> out;
  for (Vertex x = 0; x < L.algebra()->n(); ++x) out.push_back(L.image(x));
  return out;
}

template <ExactField F>
std::vector<Element<F>> conjugate_all(const Element<F>& g, const std::vector<Element<F>>& fs) {
  auto ginv = unipotent_inverse(g);
  std::vector<Element<F>> out;
  for (const auto& f : fs) out.push_back(g * f * ginv);
  return out;
}

template <ExactField F>
bool orthogonal_idempotents(const std::vector<Element<F>>& fs) {
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j) {
      auto p = fs[i] * fs[j];
      if (i == j ? !(p == fs[i]) : !p.is_zero()) return false;
    }
  return true;
}

}  // namespace detail

/// Looks for a strong bijective shift S_alpha and g = delta + h such that
/// g (S_alpha L)(e_x) g^-1 is diagonal for all x. Tries alpha = 0 first, then
/// alpha solving conditions (1)-(3) with (S_alpha L)(e_x)_D = e_{pi(x)} for
/// each permutation pi.
template <ExactField F>
ExploreResult<F> explore_conjecture(const LinearMap<F>& L) {
  detail::require_hypotheses(L, false);
  const auto& alg = L.algebra();
  const auto& K = alg->field();
  const std::size_t n = alg->n(), d = alg->dim();
  ExploreResult<F> res;
  res.alpha = ShiftData<F>::zero(alg);
  if (is_diagonality_preserver(L)) {
    res.found = true;
    res.conjugator = Element<F>::identity(alg);
    res.diagonalized = detail::diagonal_images(L);
    res.note = "already diagonality-preserving";
    return res;
  }
  if (auto g = detail::unipotent_diagonalizer(alg, detail::diagonal_images(L))) {
    res.found = true;
    res.conjugator = *g;
    res.diagonalized = detail::conjugate_all(*g, detail::diagonal_images(L));
    res.note = "conjugation alone suffices";
    return res;
  }
  auto constraints = alpha_constraint_system(alg);
  const std::size_t unknowns = d * n;
  std::vector<Vertex> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    Matrix<F> m = constraints;
    std::vector<typename F::value_type> rhs(m.rows(), K.zero());
    // (S_alpha L)(e_x)(y,y) = L(e_x)(y,y) + sum_j L(e_x)_j alpha(b_j)(y,y) = [y == pi(x)]
    for (Vertex x = 0; x < n; ++x) {
      auto fx = L.image(x);
      for (Vertex y = 0; y < n; ++y) {
        std::vector<typename F::value_type> row(unknowns, K.zero());
        for (const auto& [j, s] : fx.coeffs()) row[j * n + y] = s;
        m.append_row(row);
        rhs.push_back((y == pi[x] ? K.one() : K.zero()) - fx[y]);
      }
    }
    auto sol = solve(K, m, rhs);
    if (!sol) continue;
    std::vector<std::vector<typename F::value_type>> candidates{sol->particular};
    for (const auto& dir : sol->directions) {
      auto c = sol->particular;
      for (std::size_t i = 0; i < unknowns; ++i) c[i] = c[i] + dir[i];
      candidates.push_back(std::move(c));
    }
    for (const auto& cand : candidates) {
      auto alpha = ShiftData<F>::from_coordinates(alg, cand);
      auto rep = validate_alpha(alpha);
      if (!rep.strong || !rep.bijective) continue;
      auto shifted = shift_map(alpha).compose(L);
      auto fs = detail::diagonal_images(shifted);
      if (!detail::orthogonal_idempotents(fs)) continue;
      auto g = detail::unipotent_diagonalizer(alg, fs);
      if (!g) continue;
      res.found = true;
      res.alpha = alpha;
      for (const auto& dir : sol->directions) res.alpha_directions.push_back(ShiftData<F>::from_coordinates(alg, dir));
      res.conjugator = *g;
      res.diagonalized = detail::conjugate_all(*g, fs);
      res.note = "shift found for a permutation of the diagonal idempotents";
      return res;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  res.note = "no shift and conjugator found";
  return res;
}

}  // namespace incalg
