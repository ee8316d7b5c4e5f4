#pragma once

// Shared fixtures: the worked example maps, and a dense n x n matrix model of
// I(X,K) that is independent of the sparse convolution code.

#include <initializer_list>
#include <utility>
#include <vector>

#include "incalg/io.hpp"
#include "incalg/random.hpp"

namespace fx {

using namespace incalg;
using Q = RationalField;
using Fp = PrimeField;
using EQ = Element<Q>;

inline Poset v_poset() { return Poset::from_labelled_covers({1, 2, 3}, {{1, 2}, {1, 3}}); }
inline Poset five_poset() { return Poset::from_labelled_covers({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}, {1, 4}, {4, 5}}); }
inline Poset chain2() { return Poset::from_labelled_covers({1, 2}, {{1, 2}}); }
inline Poset crown() { return Poset::from_labelled_covers({1, 2, 3, 4}, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}); }

/// e_xy by 1-based labels.
template <ExactField F>
Element<F> e(const AlgebraPtr<F>& alg, int x, int y) {
  return Element<F>::e(alg, static_cast<Vertex>(x - 1), static_cast<Vertex>(y - 1));
}

template <ExactField F>
Element<F> e(const AlgebraPtr<F>& alg, int x) {
  return e(alg, x, x);
}

/// Identity except on the listed basis elements (1-based label pairs).
template <ExactField F>
LinearMap<F> map_with(const AlgebraPtr<F>& alg, std::initializer_list<std::pair<std::pair<int, int>, Element<F>>> over) {
  std::vector<Element<F>> im;
  for (std::size_t i = 0; i < alg->dim(); ++i) im.push_back(Element<F>::basis(alg, i));
  for (const auto& [xy, img] : over)
    im[alg->index(static_cast<Vertex>(xy.first - 1), static_cast<Vertex>(xy.second - 1))] = img;
  return LinearMap<F>::from_images(alg, im);
}

/// V poset: phi(e_12) = e_12 + e_1 + e_3, phi(e_13) = e_13 + e_1 + e_2.
inline LinearMap<Q> phi_v(const AlgebraPtr<Q>& a) {
  return map_with(a, {{{1, 2}, e(a, 1, 2) + e(a, 1) + e(a, 3)}, {{1, 3}, e(a, 1, 3) + e(a, 1) + e(a, 2)}});
}

/// Five elements: phi(e_1) = e_1 + 2e_4 + 2e_5, phi(e_4) = -e_4, phi(e_5) = -e_5,
/// phi(e_15) = -e_15.
inline LinearMap<Q> phi_five(const AlgebraPtr<Q>& a) {
  Rational two(2);
  return map_with(a, {{{1, 1}, e(a, 1) + two * e(a, 4) + two * e(a, 5)},
                      {{4, 4}, -e(a, 4)},
                      {{5, 5}, -e(a, 5)},
                      {{1, 5}, -e(a, 1, 5)}});
}

/// 2-chain: phi(e_12) = e_1 + e_12.
template <ExactField F>
LinearMap<F> phi_chain2_lie(const AlgebraPtr<F>& a) {
  return map_with(a, {{{1, 2}, e(a, 1) + e(a, 1, 2)}});
}

/// 2-chain: phi(e_1) = e_12, phi(e_12) = e_2, phi(e_2) = delta - e_12.
template <ExactField F>
LinearMap<F> phi_chain2_nondiag(const AlgebraPtr<F>& a) {
  return map_with(a, {{{1, 1}, e(a, 1, 2)}, {{1, 2}, e(a, 2)}, {{2, 2}, e(a, 1) + e(a, 2) - e(a, 1, 2)}});
}

/// alpha(e_1) = alpha(e_12) = e_1, alpha(e_2) = -e_1.
template <ExactField F>
ShiftData<F> alpha_chain2(const AlgebraPtr<F>& a) {
  return ShiftData<F>(a, {e(a, 1), -e(a, 1), e(a, 1)});
}

// ---------------------------------------------------------------------------
// Dense model: f as the n x n matrix with f(x,y) at (x,y), zero off the order.

template <ExactField F>
using Dense = std::vector<std::vector<typename F::value_type>>;

template <ExactField F>
Dense<F> dense(const Element<F>& f) {
  const auto& alg = *f.algebra();
  Dense<F> m(alg.n(), std::vector<typename F::value_type>(alg.n(), alg.field().zero()));
  for (const auto& [i, s] : f.coeffs()) m[alg.basis(i).lo][alg.basis(i).hi] = s;
  return m;
}

template <ExactField F>
Dense<F> dense_mul(const F& K, const Dense<F>& a, const Dense<F>& b) {
  const std::size_t n = a.size();
  Dense<F> r(n, std::vector<typename F::value_type>(n, K.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
  return r;
}

template <ExactField F>
Dense<F> dense_sub(const Dense<F>& a, const Dense<F>& b) {
  auto r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

/// Every element of I(X,F_p), p small.
inline std::vector<Element<Fp>> all_elements(const AlgebraPtr<Fp>& alg) {
  const std::size_t d = alg->dim();
  const auto p = alg->field().modulus();
  std::vector<Element<Fp>> out;
  std::vector<std::uint32_t> digits(d, 0);
  while (true) {
    Element<Fp> f(alg);
    for (std::size_t i = 0; i < d; ++i) f.set(i, alg->field().from_int(digits[i]));
    out.push_back(std::move(f));
    std::size_t i = 0;
    while (i < d && ++digits[i] == p) digits[i++] = 0;
    if (i == d) return out;
  }
}

}  // namespace fx
