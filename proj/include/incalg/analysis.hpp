#pragma once

// Linear endomorphisms of I(X,K) and the basis-level tests for commutativity,
// strong commutativity and diagonality preservation; extraction of the data
// (theta, sigma, nu, c) of a bijective strong diagonality preserver.

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "incalg/algebra.hpp"
#include "incalg/bijection.hpp"
#include "incalg/oracle.hpp"

namespace incalg {

/// Matrix over the canonical basis; column j holds the image of basis vector j.
template <ExactField F>
class LinearMap {
 public:
  using Scalar = typename F::value_type;

  LinearMap(AlgebraPtr<F> alg, Matrix<F> m) : alg_(std::move(alg)), m_(std::move(m)) {
    if (m_.rows() != alg_->dim() || m_.cols() != alg_->dim())
      throw Error(ErrorKind::SchemaError, "matrix size does not match dim I(X,K) = " + std::to_string(alg_->dim()));
  }

  static LinearMap identity(AlgebraPtr<F> alg) {
    auto m = Matrix<F>::identity(alg->dim(), alg->field());
    return LinearMap(std::move(alg), std::move(m));
  }
  static LinearMap zero(AlgebraPtr<F> alg) {
    Matrix<F> m(alg->dim(), alg->dim(), alg->field());
    return LinearMap(std::move(alg), std::move(m));
  }
  /// images[j] is the image of basis vector j.
  static LinearMap from_images(AlgebraPtr<F> alg, const std::vector<Element<F>>& images) {
    if (images.size() != alg->dim()) throw Error(ErrorKind::SchemaError, "need one image per basis vector");
    Matrix<F> m(alg->dim(), alg->dim(), alg->field());
    for (std::size_t j = 0; j < images.size(); ++j) {
      images[j].check_same(Element<F>(alg));
      for (const auto& [i, s] : images[j].coeffs()) m(i, j) = s;
    }
    return LinearMap(std::move(alg), std::move(m));
  }

  const AlgebraPtr<F>& algebra() const { return alg_; }
  const F& field() const { return alg_->field(); }
  const Matrix<F>& matrix() const { return m_; }
  std::size_t dim() const { return alg_->dim(); }

  Element<F> image(std::size_t j) const { return Element<F>::from_vector(alg_, m_.column(j)); }
  Element<F> image(Vertex x, Vertex y) const { return image(alg_->index(x, y)); }

  Element<F> apply(const Element<F>& f) const {
    f.check_same(Element<F>(alg_));
    return Element<F>::from_vector(alg_, multiply(field(), m_, f.to_vector()));
  }

  /// this o inner
  LinearMap compose(const LinearMap& inner) const {
    check_same(inner);
    return LinearMap(alg_, multiply(field(), m_, inner.m_));
  }
  LinearMap operator+(const LinearMap& o) const {
    check_same(o);
    Matrix<F> r = m_;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) r(i, j) = r(i, j) + o.m_(i, j);
    return LinearMap(alg_, std::move(r));
  }
  friend LinearMap operator*(const Scalar& k, const LinearMap& l) {
    Matrix<F> r = l.m_;
    for (std::size_t i = 0; i < l.dim(); ++i)
      for (std::size_t j = 0; j < l.dim(); ++j) r(i, j) = k * r(i, j);
    return LinearMap(l.alg_, std::move(r));
  }

  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    a.check_same(b);
    return a.m_ == b.m_;
  }

  void check_same(const LinearMap& o) const {
    if (!alg_->same_as(*o.alg_)) throw Error(ErrorKind::MismatchedContext, "maps on different incidence algebras");
  }

 private:
  AlgebraPtr<F> alg_;
  Matrix<F> m_;
};

template <ExactField F>
bool is_diagonality_preserver(const LinearMap<F>& L) {
  for (Vertex x = 0; x < L.algebra()->n(); ++x)
    if (!L.image(x).is_diagonal()) return false;
  return true;
}

struct CommViolation {
  enum class Kind { CommutingPair, EndpointBrackets, ChainBrackets };
  Kind kind;
  std::vector<std::string> basis;  ///< basis names involved
  std::string str() const {
    std::string s = kind == Kind::CommutingPair     ? "commuting pair not preserved:"
                    : kind == Kind::EndpointBrackets ? "[phi(e_x),phi(e_xy)] != [phi(e_xy),phi(e_y)]:"
                                                     : "[phi(e_xz),phi(e_zy)] != [phi(e_x),phi(e_xy)]:";
    for (const auto& b : basis) s += " " + b;
    return s;
  }
};

struct CommReport {
  bool holds = true;
  std::vector<CommViolation> violations;
};

/// Basis-level criterion: (a) commuting basis pairs have commuting images;
/// (b) [phi e_x, phi e_xy] = [phi e_xy, phi e_y] for x < y;
/// (c) [phi e_xz, phi e_zy] = [phi e_x, phi e_xy] for x < z < y.
template <ExactField F>
CommReport check_commutativity_preserver(const LinearMap<F>& L) {
  const auto& alg = L.algebra();
  const auto& P = alg->poset();
  CommReport rep;
  std::vector<Element<F>> img;
  for (std::size_t i = 0; i < alg->dim(); ++i) img.push_back(L.image(i));
  auto fail = [&](CommViolation::Kind k, std::vector<std::size_t> idx) {
    rep.holds = false;
    CommViolation v{k, {}};
    for (auto i : idx) v.basis.push_back(alg->basis_name(i));
    rep.violations.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = i + 1; j < alg->dim(); ++j) {
      bool commute = alg->product_index(i, j) == Algebra<F>::npos && alg->product_index(j, i) == Algebra<F>::npos;
      if (commute && !bracket(img[i], img[j]).is_zero()) fail(CommViolation::Kind::CommutingPair, {i, j});
    }
  for (const auto& s : P.strict_pairs()) {
    auto xy = alg->index(s);
    auto ref = bracket(img[s.lo], img[xy]);
    if (!(ref == bracket(img[xy], img[s.hi]))) fail(CommViolation::Kind::EndpointBrackets, {s.lo, xy, s.hi});
    for (Vertex z = 0; z < P.size(); ++z)
      if (P.less(s.lo, z) && P.less(z, s.hi)) {
        auto xz = alg->index(s.lo, z), zy = alg->index(z, s.hi);
        if (!(bracket(img[xz], img[zy]) == ref)) fail(CommViolation::Kind::ChainBrackets, {xz, zy, xy});
      }
  }
  return rep;
}

/// [phi e_x, phi e_xy] for every x < y, in canonical strict-pair order.
template <ExactField F>
std::vector<Element<F>> commutator_family(const LinearMap<F>& L) {
  const auto& alg = L.algebra();
  std::vector<Element<F>> out;
  for (const auto& s : alg->poset().strict_pairs()) out.push_back(bracket(L.image(s.lo), L.image(alg->index(s))));
  return out;
}

template <ExactField F>
bool family_independent(const std::vector<Element<F>>& fam, const AlgebraPtr<F>& alg) {
  if (fam.empty()) return true;
  Matrix<F> m(0, alg->dim(), alg->field());
  for (const auto& f : fam) m.append_row(f.to_vector());
  return rank(alg->field(), m) == fam.size();
}

enum class StrongMethod { LinearIndependence, BruteForce };

inline std::string to_string(StrongMethod m) {
  return m == StrongMethod::LinearIndependence ? "LI-criterion" : "brute-force";
}

struct StrongVerdict {
  bool strong = false;
  StrongMethod method = StrongMethod::LinearIndependence;
};

/// Strongness of a commutativity preserver. An independent commutator family
/// always means strong; a dependent one means not strong when K has at least
/// |X| elements (an injective diagonal exists). Otherwise enumerate.
template <ExactField F>
StrongVerdict is_strong_preserver(const LinearMap<F>& L) {
  if (!check_commutativity_preserver(L).holds)
    throw Error(ErrorKind::NotCommPreserver, "strongness is defined for commutativity preservers only");
  const auto& alg = L.algebra();
  if (family_independent(commutator_family(L), alg)) return {true, StrongMethod::LinearIndependence};
  auto size = alg->field().size();
  if (!size || *size >= alg->n()) return {false, StrongMethod::LinearIndependence};
  if constexpr (std::is_same_v<F, PrimeField>) {
    return {oracle::brute_verdict(*alg, L.matrix()).strong, StrongMethod::BruteForce};
  } else {
    throw Error(ErrorKind::BruteForceInfeasible, "no brute-force engine for this field");
  }
}

template <ExactField F>
bool is_bijective(const LinearMap<F>& L) {
  return rank(L.field(), L.matrix()) == L.dim();
}

/// phi(delta) != 0; equivalent to injectivity for strong preservers.
template <ExactField F>
bool remark_injective(const LinearMap<F>& L) {
  return !L.apply(Element<F>::identity(L.algebra())).is_zero();
}

template <ExactField F>
std::optional<LinearMap<F>> inverse(const LinearMap<F>& L) {
  auto inv = inverse(L.field(), L.matrix());
  if (!inv) return std::nullopt;
  return LinearMap<F>(L.algebra(), std::move(*inv));
}

template <ExactField F>
struct PreserverInvariants {
  using Scalar = typename F::value_type;
  BasisBijection theta;
  PairMap<Scalar> sigma;
  std::map<Pair, Element<F>> nu;
  PairMap<Scalar> c;
};

/// phi(e_xy) = sigma(x,y) theta(e_xy) + nu(e_xy) with nu diagonal, and
/// c(x,y) = phi(e_x)(u,u) - phi(e_x)(v,v) where theta(e_xy) = e_uv.
template <ExactField F>
PreserverInvariants<F> extract_invariants(const LinearMap<F>& L) {
  const auto& alg = L.algebra();
  const auto& P = alg->poset();
  const auto& K = alg->field();
  PreserverInvariants<F> inv;
  std::map<Pair, Pair> theta;
  for (const auto& s : P.strict_pairs()) {
    auto img = L.image(alg->index(s));
    auto [diag, rad] = split_diag_jacobson(img);
    if (rad.coeffs().size() != 1)
      throw Error(ErrorKind::NotPureDecomposable, "image of " + alg->basis_name(alg->index(s)) + " has " +
                                                      std::to_string(rad.coeffs().size()) +
                                                      " strict-pair coefficients, expected 1");
    const auto& [k, coef] = *rad.coeffs().begin();
    theta.emplace(s, alg->basis(k));
    inv.sigma.emplace(s, coef);
    inv.nu.emplace(s, diag);
  }
  inv.theta = BasisBijection::from_map(P, std::move(theta));
  for (const auto& s : P.strict_pairs()) {
    const auto& uv = inv.theta(s);
    auto ex = L.image(s.lo);
    auto c = ex.at(uv.lo, uv.lo) - ex.at(uv.hi, uv.hi);
    if (K.is_zero(c))
      throw Error(ErrorKind::ZeroC, "c(" + alg->pair_key(s) + ") = 0");
    inv.c.emplace(s, c);
  }
  return inv;
}

}  // namespace incalg
