#pragma once

// Cross-validation of the analytic criteria against brute force over small
// prime fields, on every connected poset up to a size bound.

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <vector>

#include "incalg/io.hpp"
#include "incalg/oracle.hpp"
#include "incalg/random.hpp"

namespace incalg::oracle {

/// Canonical form of a poset under relabelling: the lexicographically least
/// sorted cover list over all permutations.
inline std::vector<std::pair<Vertex, Vertex>> canonical_form(const Poset& P) {
  std::vector<Vertex> perm(P.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<Vertex, Vertex>> best;
  bool first = true;
  do {
    std::vector<std::pair<Vertex, Vertex>> form;
    for (const auto& c : P.covers()) form.emplace_back(perm[c.lo], perm[c.hi]);
    std::sort(form.begin(), form.end());
    if (first || form < best) best = form;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// One representative per isomorphism class of connected posets with 2..max_n elements.
inline std::vector<Poset> poset_classes(std::size_t max_n) {
  std::vector<Poset> out;
  std::vector<std::pair<std::size_t, std::vector<std::pair<Vertex, Vertex>>>> seen;
  for (auto& P : gen::small_posets(max_n)) {
    auto key = std::make_pair(P.size(), canonical_form(P));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    out.push_back(std::move(P));
  }
  return out;
}

struct Disagreement {
  std::string poset;
  std::string criterion;
  io::Json specimen;  ///< minimized map or alpha
};

struct SuiteReport {
  std::uint32_t prime = 0;
  std::size_t posets = 0;
  std::size_t maps = 0;
  std::size_t alphas = 0;
  std::size_t preservers = 0;       ///< maps found to be commutativity preservers
  std::size_t strong = 0;           ///< of which strong
  std::size_t li_dependent_strong = 0;  ///< strong although the commutator family is dependent
  std::size_t skipped_posets = 0;   ///< too large for enumeration
  std::vector<Disagreement> disagreements;
  double seconds = 0;

  io::Json to_json() const {
    io::Json d = io::Json::array();
    for (const auto& x : disagreements)
      d.push_back(io::Json{{"poset", x.poset}, {"criterion", x.criterion}, {"specimen", x.specimen}});
    return io::Json{{"field", "Fp:" + std::to_string(prime)},
                    {"posets", posets},
                    {"skipped_posets", skipped_posets},
                    {"maps", maps},
                    {"alphas", alphas},
                    {"commutativity_preservers", preservers},
                    {"strong_preservers", strong},
                    {"strong_with_dependent_commutators", li_dependent_strong},
                    {"disagreements", d},
                    {"seconds", seconds}};
  }
};

namespace detail {

/// Name of the first criterion on which analytic and brute-force verdicts
/// differ, or empty.
inline std::string map_mismatch(const LinearMap<PrimeField>& L, const Verdict& b, bool* strong_dependent = nullptr) {
  bool comm = check_commutativity_preserver(L).holds;
  if (comm != b.comm_preserver) return "commutativity preserver";
  if (is_bijective(L) != b.bijective) return "bijective";
  if (!comm) return {};
  auto sv = is_strong_preserver(L);
  if (sv.strong != b.strong) return "strong (" + to_string(sv.method) + ")";
  bool independent = family_independent(commutator_family(L), L.algebra());
  if (independent && !b.strong) return "linear-independence sufficiency";
  if (strong_dependent && b.strong && !independent) *strong_dependent = true;
  if (b.strong && remark_injective(L) != b.bijective) return "strong preserver injective iff phi(delta) != 0";
  return {};
}

inline std::string alpha_mismatch(const ShiftData<PrimeField>& a, const Verdict& b) {
  auto rep = validate_alpha(a);
  if (rep.comm_preserver != b.comm_preserver) return "S_alpha commutativity conditions";
  if (rep.comm_preserver && rep.strong != b.strong) return "S_alpha strongness condition";
  if (rep.strong && rep.bijective != b.bijective) return "S_alpha bijectivity condition";
  return {};
}

inline std::string poset_text(const Poset& P) { return io::poset_to_json(P).dump(); }

}  // namespace detail

/// Greedily zeroes matrix entries while `still_bad` holds.
template <class Pred>
LinearMap<PrimeField> minimize_map(LinearMap<PrimeField> L, Pred still_bad) {
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j) {
      if (L.field().is_zero(L.matrix()(i, j))) continue;
      auto m = L.matrix();
      m(i, j) = L.field().zero();
      LinearMap<PrimeField> trial(L.algebra(), std::move(m));
      if (still_bad(trial)) L = std::move(trial);
    }
  return L;
}

/// For each poset class up to `bound` elements whose algebra is small enough
/// to enumerate: the identity, `samples` random maps and `samples` random
/// alphas, each judged analytically and by brute force.
inline SuiteReport run_oracle_suite(std::uint32_t p, std::size_t bound, std::size_t samples, std::uint64_t seed,
                                    std::size_t max_dim = 64) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.prime = p;
  PrimeField K(p);
  gen::Rng rng(seed);
  for (const auto& P : poset_classes(bound)) {
    auto alg = Algebra<PrimeField>::create(P, K);
    if (alg->dim() > max_dim || !per_f_feasible(p, alg->dim())) {
      ++rep.skipped_posets;
      continue;
    }
    ++rep.posets;
    PerF table(*alg);
    bool pairwise = pairwise_feasible(p, alg->dim());
    auto brute = [&](const Matrix<PrimeField>& m) { return pairwise ? brute_pairwise(*alg, m) : table.verdict(m); };
    auto judge = [&](const LinearMap<PrimeField>& L) {
      ++rep.maps;
      auto b = brute(L.matrix());
      bool dep = false;
      auto bad = detail::map_mismatch(L, b, &dep);
      if (b.comm_preserver) ++rep.preservers;
      if (b.strong) ++rep.strong;
      if (dep) ++rep.li_dependent_strong;
      if (!bad.empty()) {
        auto small = minimize_map(L, [&](const LinearMap<PrimeField>& t) {
          return !detail::map_mismatch(t, brute(t.matrix())).empty();
        });
        rep.disagreements.push_back({detail::poset_text(P), bad, io::map_to_json(small)});
      }
    };
    judge(LinearMap<PrimeField>::identity(alg));
    for (std::size_t s = 0; s < samples; ++s) judge(gen::random_test_map(rng, alg));
    for (std::size_t s = 0; s < samples; ++s) {
      ++rep.alphas;
      auto a = s % 2 ? gen::random_any_alpha(rng, alg) : gen::random_comm_alpha(rng, alg);
      auto b = brute(shift_map(a).matrix());
      auto bad = detail::alpha_mismatch(a, b);
      if (!bad.empty()) rep.disagreements.push_back({detail::poset_text(P), bad, io::alpha_to_json(a)});
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace incalg::oracle
