#pragma once

// Brute-force verdicts for linear maps of I(X,F_p), p small, straight from the
// definitions: quantify over every element of the algebra. Independent of the
// basis-level criteria in analysis.hpp and structure.hpp.
//
// Two engines:
//  - pairwise: every (f, g) in K^d x K^d, literally;
//  - per-f: every f in K^d (projectively), comparing the solution spaces of
//    [f, g] = 0 and [phi f, phi g] = 0 in g by exact rank.

#include <array>
#include <cstdint>
#include <vector>

#include "incalg/algebra.hpp"
#include "incalg/error.hpp"

namespace incalg::oracle {

struct Verdict {
  bool comm_preserver = false;
  bool strong = false;
  bool bijective = false;
};

/// Largest algebra dimension the engines accept.
inline constexpr std::size_t kMaxDim = 18;

/// Dense small-prime arithmetic on coordinate vectors. Entries stay reduced
/// to [0, p).
class Engine {
 public:
  using Vec = std::array<std::uint8_t, kMaxDim>;

  Engine(const Algebra<PrimeField>& alg, const Matrix<PrimeField>& phi) : p_(alg.field().modulus()), d_(alg.dim()) {
    if (p_ > 7) throw Error(ErrorKind::BruteForceInfeasible, "brute force supports p <= 7 only");
    if (d_ > kMaxDim) throw Error(ErrorKind::BruteForceInfeasible, "algebra too large for brute force");
    for (std::size_t i = 0; i < mod_.size(); ++i) mod_[i] = static_cast<std::uint8_t>(i % p_);
    for (unsigned a = 1; a < p_; ++a)
      for (unsigned b = 1; b < p_; ++b)
        if (a * b % p_ == 1) inv_[a] = static_cast<std::uint8_t>(b);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) {
        auto k = alg.product_index(i, j);
        if (k != Algebra<PrimeField>::npos)
          products_.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), static_cast<std::uint8_t>(k)});
      }
    for (std::size_t j = 0; j < d_; ++j) {
      Vec col{};
      for (std::size_t i = 0; i < d_; ++i) col[i] = static_cast<std::uint8_t>(phi(i, j).value());
      columns_.push_back(col);
    }
  }

  std::size_t dim() const { return d_; }
  std::uint32_t prime() const { return p_; }

  Vec bracket(const Vec& f, const Vec& g) const {
    std::array<unsigned, kMaxDim> pos{}, neg{};
    for (const auto& t : products_) {
      pos[t.k] += f[t.i] * g[t.j];
      neg[t.k] += f[t.j] * g[t.i];
    }
    Vec r{};
    for (std::size_t k = 0; k < d_; ++k) r[k] = mod_[mod_[pos[k]] + p_ - mod_[neg[k]]];
    return r;
  }

  /// phi(f) as the combination of the images of the basis.
  Vec apply(const Vec& f) const {
    std::array<unsigned, kMaxDim> acc{};
    for (std::size_t j = 0; j < d_; ++j) {
      if (!f[j]) continue;
      const unsigned c = f[j];
      for (std::size_t i = 0; i < d_; ++i) acc[i] += c * columns_[j][i];
    }
    Vec r{};
    for (std::size_t i = 0; i < d_; ++i) r[i] = mod_[acc[i]];
    return r;
  }

  bool is_zero(const Vec& v) const {
    for (std::size_t i = 0; i < d_; ++i)
      if (v[i]) return false;
    return true;
  }

  /// Position of v in the enumeration order of for_each_vector.
  std::size_t code(const Vec& v) const {
    std::size_t c = 0;
    for (std::size_t i = d_; i-- > 0;) c = c * p_ + v[i];
    return c;
  }

  /// Rank of the d x d matrix whose columns are `cols`, destroyed in place.
  std::size_t rank(std::vector<Vec>& cols) const {
    std::size_t r = 0;
    for (std::size_t row = 0; row < d_ && r < cols.size(); ++row) {
      std::size_t piv = r;
      while (piv < cols.size() && cols[piv][row] == 0) ++piv;
      if (piv == cols.size()) continue;
      std::swap(cols[piv], cols[r]);
      const unsigned inv = inv_[cols[r][row]];
      for (std::size_t i = row; i < d_; ++i) cols[r][i] = mod_[cols[r][i] * inv];
      for (std::size_t c = r + 1; c < cols.size(); ++c) {
        const unsigned f = cols[c][row];
        if (!f) continue;
        for (std::size_t i = row; i < d_; ++i) cols[c][i] = mod_[cols[c][i] + (p_ - f) * cols[r][i]];
      }
      ++r;
    }
    return r;
  }

  /// Calls fn(v) for every v in K^d in increasing code order; with
  /// `projective`, only for v whose last nonzero coordinate is 1.
  template <class Fn>
  void for_each_vector(bool projective, Fn&& fn) const {
    Vec v{};
    while (true) {
      if (!projective || leading_one(v)) fn(v);
      std::size_t i = 0;
      while (i < d_ && ++v[i] == p_) v[i++] = 0;
      if (i == d_) return;
    }
  }

  /// Kernel basis of the d x d matrix with columns `cols`, and its rank.
  std::vector<Vec> kernel(const std::vector<Vec>& cols, std::size_t& rank_out) const {
    // row-major copy, reduced row echelon form
    std::vector<Vec> rows(d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) rows[i][j] = cols[j][i];
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < d_ && r < d_; ++c) {
      std::size_t piv = r;
      while (piv < d_ && rows[piv][c] == 0) ++piv;
      if (piv == d_) continue;
      std::swap(rows[piv], rows[r]);
      const unsigned inv = inv_[rows[r][c]];
      for (std::size_t j = 0; j < d_; ++j) rows[r][j] = mod_[rows[r][j] * inv];
      for (std::size_t i = 0; i < d_; ++i) {
        const unsigned f = rows[i][c];
        if (i == r || !f) continue;
        for (std::size_t j = 0; j < d_; ++j) rows[i][j] = mod_[rows[i][j] + (p_ - f) * rows[r][j]];
      }
      pivots.push_back(c);
      ++r;
    }
    rank_out = r;
    std::vector<bool> is_pivot(d_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < d_; ++free) {
      if (is_pivot[free]) continue;
      Vec v{};
      v[free] = 1;
      for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = mod_[p_ - rows[k][free]];
      basis.push_back(v);
    }
    return basis;
  }

 private:
  struct Triple {
    std::uint8_t i, j, k;
  };

  bool leading_one(const Vec& v) const {
    for (std::size_t i = d_; i-- > 0;)
      if (v[i]) return v[i] == 1;
    return false;
  }

  std::uint32_t p_;
  std::size_t d_;
  std::array<std::uint8_t, 1024> mod_{};
  std::array<std::uint8_t, 8> inv_{};
  std::vector<Triple> products_;
  std::vector<Vec> columns_;  ///< phi(e_j)
};

/// Largest number of vectors the per-f engine will enumerate.
inline constexpr double kMaxVectors = 2.0e5;
/// Largest number of pairs the pairwise engine will enumerate.
inline constexpr double kMaxPairs = 2.0e5;

inline double power(double b, std::size_t e) {
  double r = 1;
  while (e--) r *= b;
  return r;
}

inline bool per_f_feasible(std::uint32_t p, std::size_t d) { return d <= kMaxDim && power(p, d) <= kMaxVectors; }
inline bool pairwise_feasible(std::uint32_t p, std::size_t d) { return d <= kMaxDim && power(p, 2 * d) <= kMaxPairs; }

/// Injectivity by enumerating every nonzero f and testing phi(f) != 0.
inline bool brute_bijective(const Engine& eng) {
  bool injective = true;
  eng.for_each_vector(true, [&](const Engine::Vec& f) {
    if (injective && eng.is_zero(eng.apply(f))) injective = false;
  });
  return injective;
}

/// Per-poset tables for the per-f engine: for every projective f a basis of
/// ker(g -> [f, g]), and for every h in K^d the rank of g -> [h, g]. These
/// depend on the algebra only, so one table serves every map.
class PerF {
 public:
  explicit PerF(const Algebra<PrimeField>& alg) : alg_(&alg) {
    Engine eng(alg, Matrix<PrimeField>::identity(alg.dim(), alg.field()));
    const std::size_t d = eng.dim();
    if (!per_f_feasible(eng.prime(), d))
      throw Error(ErrorKind::BruteForceInfeasible, "too many vectors for brute-force enumeration");
    std::vector<Engine::Vec> basis(d, Engine::Vec{});
    for (std::size_t j = 0; j < d; ++j) basis[j][j] = 1;
    std::vector<std::uint8_t> projective_rank;
    eng.for_each_vector(true, [&](const Engine::Vec& f) {
      std::vector<Engine::Vec> cols(d);
      for (std::size_t j = 0; j < d; ++j) cols[j] = eng.bracket(f, basis[j]);
      Entry e{f, 0, {}};
      e.kernel = eng.kernel(cols, e.rank);
      entries_.push_back(std::move(e));
    });
    // rank of ad(h) is constant on lines: fill by scaling each projective entry
    rank_of_.assign(static_cast<std::size_t>(power(eng.prime(), d)), 0);
    for (const auto& e : entries_)
      for (unsigned s = 1; s < eng.prime(); ++s) {
        Engine::Vec h{};
        for (std::size_t i = 0; i < d; ++i) h[i] = static_cast<std::uint8_t>(e.f[i] * s % eng.prime());
        rank_of_[eng.code(h)] = static_cast<std::uint8_t>(e.rank);
      }
  }

  /// For phi bijective, ker(ad(phi f) o phi) = phi^-1 ker ad(phi f), so the
  /// strongness rank comparison reads rank ad(phi f) from the table.
  Verdict verdict(const Matrix<PrimeField>& phi) const {
    Engine eng(*alg_, phi);
    const std::size_t d = eng.dim();
    std::vector<Engine::Vec> phi_basis(d);
    for (std::size_t j = 0; j < d; ++j) {
      Engine::Vec b{};
      b[j] = 1;
      phi_basis[j] = eng.apply(b);
    }
    Verdict v{true, true, true};
    std::vector<Engine::Vec> pfs;
    pfs.reserve(entries_.size());
    for (const auto& e : entries_) {
      pfs.push_back(eng.apply(e.f));
      if (eng.is_zero(pfs.back())) v.bijective = false;
    }
    std::vector<Engine::Vec> cols(d);
    for (std::size_t n = 0; n < entries_.size(); ++n) {
      const auto& e = entries_[n];
      const auto& pf = pfs[n];
      for (const auto& g : e.kernel)
        if (!eng.is_zero(eng.bracket(pf, eng.apply(g)))) {
          v.comm_preserver = v.strong = false;
          return v;
        }
      if (!v.strong) continue;
      std::size_t r;
      if (v.bijective) {
        r = rank_of_[eng.code(pf)];
      } else {
        for (std::size_t j = 0; j < d; ++j) cols[j] = eng.bracket(pf, phi_basis[j]);
        r = eng.rank(cols);
      }
      if (r != e.rank) v.strong = false;
    }
    return v;
  }

 private:
  struct Entry {
    Engine::Vec f;
    std::size_t rank;
    std::vector<Engine::Vec> kernel;
  };

  const Algebra<PrimeField>* alg_;
  std::vector<Entry> entries_;
  std::vector<std::uint8_t> rank_of_;
};

/// For every f: {g : [f,g]=0} must be contained in (comm) or equal to (strong)
/// {g : [phi f, phi g] = 0}.
inline Verdict brute_per_f(const Algebra<PrimeField>& alg, const Matrix<PrimeField>& phi) {
  return PerF(alg).verdict(phi);
}

/// Literal enumeration of all pairs (f, g).
inline Verdict brute_pairwise(const Algebra<PrimeField>& alg, const Matrix<PrimeField>& phi) {
  Engine eng(alg, phi);
  if (!pairwise_feasible(eng.prime(), eng.dim()))
    throw Error(ErrorKind::BruteForceInfeasible, "too many pairs for brute-force enumeration");
  std::vector<Engine::Vec> all, images;
  eng.for_each_vector(false, [&](const Engine::Vec& f) {
    all.push_back(f);
    images.push_back(eng.apply(f));
  });
  Verdict v{true, true, true};
  for (std::size_t a = 0; a < all.size(); ++a) {
    if (eng.is_zero(images[a]) && !eng.is_zero(all[a])) v.bijective = false;
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      bool plain = eng.is_zero(eng.bracket(all[a], all[b]));
      bool image = eng.is_zero(eng.bracket(images[a], images[b]));
      if (plain && !image) v.comm_preserver = false;
      if (plain != image) v.strong = false;
    }
  }
  if (!v.comm_preserver) v.strong = false;
  return v;
}

/// Picks the pairwise engine when feasible, the per-f engine otherwise.
inline Verdict brute_verdict(const Algebra<PrimeField>& alg, const Matrix<PrimeField>& phi) {
  if (pairwise_feasible(alg.field().modulus(), alg.dim())) return brute_pairwise(alg, phi);
  return brute_per_f(alg, phi);
}

}  // namespace incalg::oracle
