#pragma once

// The incidence algebra I(X,K) of a finite connected poset over an exact
// field, with its standard basis {e_xy : x <= y}.
//
// Canonical basis order: e_{x_1},...,e_{x_n} (element order), then e_{x_i x_j}
// for x_i < x_j sorted lexicographically by (i, j). Every matrix uses it.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incalg/error.hpp"
#include "incalg/field.hpp"
#include "incalg/linalg.hpp"
#include "incalg/poset.hpp"

namespace incalg {

template <ExactField F>
class Algebra : public std::enable_shared_from_this<Algebra<F>> {
  struct Tag {};

 public:
  using Scalar = typename F::value_type;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Algebra(Tag, Poset poset, F field) : poset_(std::move(poset)), field_(std::move(field)) {
    const std::size_t n = poset_.size();
    for (Vertex x = 0; x < n; ++x) basis_.push_back({x, x});
    for (const auto& p : poset_.strict_pairs()) basis_.push_back(p);
    index_.assign(n * n, npos);
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i].lo * n + basis_[i].hi] = i;
  }

  static std::shared_ptr<const Algebra> create(Poset poset, F field) {
    return std::make_shared<const Algebra>(Tag{}, std::move(poset), std::move(field));
  }

  const Poset& poset() const { return poset_; }
  const F& field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t n() const { return poset_.size(); }
  const std::vector<Pair>& basis() const { return basis_; }
  const Pair& basis(std::size_t i) const { return basis_[i]; }
  bool is_diagonal_index(std::size_t i) const { return i < n(); }

  /// Index of e_xy; requires x <= y.
  std::size_t index(Vertex x, Vertex y) const {
    auto i = index_[x * n() + y];
    if (i == npos)
      throw Error(ErrorKind::NotStrictlyComparable,
                  "(" + poset_.label(x) + "," + poset_.label(y) + ") is not a comparable pair");
    return i;
  }
  std::size_t index(const Pair& p) const { return index(p.lo, p.hi); }
  std::optional<std::size_t> find_index(Vertex x, Vertex y) const {
    auto i = index_[x * n() + y];
    return i == npos ? std::nullopt : std::optional<std::size_t>(i);
  }

  /// Index of e_i e_j (a basis element or zero).
  std::size_t product_index(std::size_t i, std::size_t j) const {
    if (basis_[i].hi != basis_[j].lo) return npos;
    return index_[basis_[i].lo * n() + basis_[j].hi];
  }

  /// "x,y" with element labels.
  std::string pair_key(const Pair& p) const { return poset_.label(p.lo) + "," + poset_.label(p.hi); }
  std::string pair_key(std::size_t i) const { return pair_key(basis_[i]); }
  std::string basis_name(std::size_t i) const {
    const auto& p = basis_[i];
    return p.lo == p.hi ? "e_" + poset_.label(p.lo) : "e_" + poset_.label(p.lo) + poset_.label(p.hi);
  }

  bool same_as(const Algebra& o) const { return this == &o || (poset_ == o.poset_ && field_ == o.field_); }

 private:
  Poset poset_;
  F field_;
  std::vector<Pair> basis_;
  std::vector<std::size_t> index_;
};

template <ExactField F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

/// Sparse element of I(X,K): basis index -> nonzero coefficient.
template <ExactField F>
class Element {
 public:
  using Scalar = typename F::value_type;

  Element() = default;
  explicit Element(AlgebraPtr<F> alg) : alg_(std::move(alg)) {}

  static Element basis(AlgebraPtr<F> alg, std::size_t i) {
    Element e(alg);
    e.coeffs_.emplace(i, alg->field().one());
    return e;
  }
  static Element e(AlgebraPtr<F> alg, Vertex x, Vertex y) { return basis(alg, alg->index(x, y)); }
  static Element identity(AlgebraPtr<F> alg) {
    Element d(alg);
    for (Vertex x = 0; x < alg->n(); ++x) d.coeffs_.emplace(x, alg->field().one());
    return d;
  }
  static Element from_vector(AlgebraPtr<F> alg, const std::vector<Scalar>& v) {
    Element e(alg);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!alg->field().is_zero(v[i])) e.coeffs_.emplace(i, v[i]);
    return e;
  }

  const AlgebraPtr<F>& algebra() const { return alg_; }
  const F& field() const { return alg_->field(); }
  const std::map<std::size_t, Scalar>& coeffs() const { return coeffs_; }

  Scalar operator[](std::size_t i) const {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? field().zero() : it->second;
  }
  /// f(x,y); zero when x is not below y.
  Scalar at(Vertex x, Vertex y) const {
    auto i = alg_->find_index(x, y);
    return i ? (*this)[*i] : field().zero();
  }

  void set(std::size_t i, const Scalar& s) {
    if (field().is_zero(s))
      coeffs_.erase(i);
    else
      coeffs_[i] = s;
  }
  void add(std::size_t i, const Scalar& s) { set(i, (*this)[i] + s); }

  std::vector<Scalar> to_vector() const {
    std::vector<Scalar> v(alg_->dim(), field().zero());
    for (const auto& [i, s] : coeffs_) v[i] = s;
    return v;
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_diagonal() const { return coeffs_.empty() || coeffs_.rbegin()->first < alg_->n(); }
  bool is_strictly_upper() const { return coeffs_.empty() || coeffs_.begin()->first >= alg_->n(); }

  Element operator+(const Element& o) const {
    check_same(o);
    Element r = *this;
    for (const auto& [i, s] : o.coeffs_) r.add(i, s);
    return r;
  }
  Element operator-(const Element& o) const {
    check_same(o);
    Element r = *this;
    for (const auto& [i, s] : o.coeffs_) r.add(i, -s);
    return r;
  }
  Element operator-() const {
    Element r(alg_);
    for (const auto& [i, s] : coeffs_) r.coeffs_.emplace(i, -s);
    return r;
  }
  friend Element operator*(const Scalar& k, const Element& f) {
    Element r(f.alg_);
    if (f.field().is_zero(k)) return r;
    for (const auto& [i, s] : f.coeffs_) r.set(i, k * s);
    return r;
  }
  /// Convolution product.
  Element operator*(const Element& o) const {
    check_same(o);
    Element r(alg_);
    for (const auto& [i, a] : coeffs_)
      for (const auto& [j, b] : o.coeffs_) {
        auto k = alg_->product_index(i, j);
        if (k != Algebra<F>::npos) r.add(k, a * b);
      }
    return r;
  }

  friend bool operator==(const Element& a, const Element& b) {
    a.check_same(b);
    return a.coeffs_ == b.coeffs_;
  }

  void check_same(const Element& o) const {
    if (!alg_ || !o.alg_ || !alg_->same_as(*o.alg_))
      throw Error(ErrorKind::MismatchedContext, "elements of different incidence algebras");
  }

  /// Human-readable form such as "e_1 + 2*e_12".
  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [i, s] : coeffs_) {
      std::string c = field().format(s);
      bool neg = !c.empty() && c[0] == '-';
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      if (neg) c = c.substr(1);
      if (c != "1") out += c + "*";
      out += alg_->basis_name(i);
    }
    return out;
  }

 private:
  AlgebraPtr<F> alg_;
  std::map<std::size_t, Scalar> coeffs_;
};

template <ExactField F>
Element<F> convolve(const Element<F>& f, const Element<F>& g) {
  return f * g;
}

template <ExactField F>
Element<F> bracket(const Element<F>& f, const Element<F>& g) {
  return f * g - g * f;
}

/// f = f_D + f_J with f_D diagonal and f_J in the radical.
template <ExactField F>
std::pair<Element<F>, Element<F>> split_diag_jacobson(const Element<F>& f) {
  Element<F> d(f.algebra()), j(f.algebra());
  for (const auto& [i, s] : f.coeffs()) (f.algebra()->is_diagonal_index(i) ? d : j).set(i, s);
  return {d, j};
}

/// Matrix of g -> [f, g] in the canonical basis.
template <ExactField F>
Matrix<F> ad_matrix(const Element<F>& f) {
  const auto& alg = *f.algebra();
  Matrix<F> m(alg.dim(), alg.dim(), alg.field());
  for (std::size_t j = 0; j < alg.dim(); ++j) {
    auto col = bracket(f, Element<F>::basis(f.algebra(), j));
    for (const auto& [i, s] : col.coeffs()) m(i, j) = s;
  }
  return m;
}

/// Basis of the common centralizer of `fs`, by exact kernel computation.
template <ExactField F>
std::vector<Element<F>> centralizer_kernel(const AlgebraPtr<F>& alg, const std::vector<Element<F>>& fs) {
  Matrix<F> stacked(0, alg->dim(), alg->field());
  for (const auto& f : fs) stacked.append_rows(ad_matrix(f));
  std::vector<Element<F>> out;
  for (const auto& v : kernel(alg->field(), stacked)) out.push_back(Element<F>::from_vector(alg, v));
  return out;
}

/// C(d) = D(X,K) + span{e_xy : d(x,x) = d(y,y)} for diagonal d, as basis elements.
template <ExactField F>
std::vector<Element<F>> centralizer_of_diagonal(const Element<F>& d) {
  if (!d.is_diagonal()) throw Error(ErrorKind::NotDiagonal, "centralizer formula needs a diagonal element");
  const auto& alg = d.algebra();
  std::vector<Element<F>> out;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    const auto& p = alg->basis(i);
    if (p.lo == p.hi || d[p.lo] == d[p.hi]) out.push_back(Element<F>::basis(alg, i));
  }
  return out;
}

/// Pairs x < y with x minimal and y maximal; these span the center of the radical basis.
inline std::vector<Pair> radical_center_basis(const Poset& p) {
  std::vector<Pair> out;
  for (const auto& s : p.strict_pairs())
    if (p.is_minimal(s.lo) && p.is_maximal(s.hi)) out.push_back(s);
  return out;
}

/// Indicator idempotent e_Y = sum of e_y over y in Y.
template <ExactField F>
Element<F> indicator(const AlgebraPtr<F>& alg, const std::vector<Vertex>& ys) {
  Element<F> e(alg);
  for (Vertex y : ys) e.set(y, alg->field().one());
  return e;
}

/// Checks that the common centralizer of all e_Y with Y containing x and y
/// is exactly D(X,K) + span{e_xy}.
template <ExactField F>
bool interval_centralizer_identity(const AlgebraPtr<F>& alg, Vertex x, Vertex y) {
  const auto& P = alg->poset();
  if (!P.less(x, y)) throw Error(ErrorKind::NotStrictlyComparable, "need x < y");
  std::vector<Vertex> others;
  for (Vertex v = 0; v < P.size(); ++v)
    if (v != x && v != y) others.push_back(v);
  std::vector<Element<F>> idempotents;
  for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
    std::vector<Vertex> ys{x, y};
    for (std::size_t k = 0; k < others.size(); ++k)
      if (mask >> k & 1) ys.push_back(others[k]);
    idempotents.push_back(indicator(alg, ys));
  }
  auto ker = centralizer_kernel(alg, idempotents);
  // expected space has dimension n + 1; check containment both ways via rank
  const auto& field = alg->field();
  std::size_t expected_dim = alg->n() + 1;
  if (ker.size() != expected_dim) return false;
  Matrix<F> m(0, alg->dim(), field);
  for (const auto& k : ker) m.append_row(k.to_vector());
  for (Vertex v = 0; v < alg->n(); ++v) m.append_row(Element<F>::basis(alg, v).to_vector());
  m.append_row(Element<F>::e(alg, x, y).to_vector());
  return rank(field, m) == expected_dim;
}

/// dim Z(I(X,K)), computed as the common kernel of ad(e_b) over all basis b.
template <ExactField F>
std::size_t center_dimension(const AlgebraPtr<F>& alg) {
  std::vector<Element<F>> all;
  for (std::size_t i = 0; i < alg->dim(); ++i) all.push_back(Element<F>::basis(alg, i));
  return centralizer_kernel(alg, all).size();
}

}  // namespace incalg
