// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "incalg/oracle_suite.hpp"
#include "support/fixtures.hpp"

using namespace incalg;
using fx::e;

namespace {

/// Collects the first few failed expectations of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (notes_.tellp() > 0 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  std::string notes() const {
    auto s = notes_.str();
    if (failures_ > 3) s += " (+" + std::to_string(failures_ - 3) + " more)";
    return s;
  }
  std::string info;

 private:
  std::size_t failures_ = 0;
  std::ostringstream notes_;
};

template <class S>
PairMap<S> constant_map(const Poset& P, const S& v) {
  PairMap<S> m;
  for (const auto& s : P.strict_pairs()) m.emplace(s, v);
  return m;
}

template <ExactField F>
bool bracket_preserving(const LinearMap<F>& psi) {
  const auto& alg = psi.algebra();
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      auto bi = Element<F>::basis(alg, i), bj = Element<F>::basis(alg, j);
      if (!(psi.apply(bracket(bi, bj)) == bracket(psi.apply(bi), psi.apply(bj)))) return false;
    }
  return true;
}

template <ExactField F>
bool verifies(const LinearMap<F>& L, bool diag) {
  return check_commutativity_preserver(L).holds && is_strong_preserver(L).strong && is_bijective(L) &&
         is_diagonality_preserver(L) == diag;
}

// ---------------------------------------------------------------------------

void v_poset(Check& ck) {
  auto v = Algebra<fx::Q>::create(fx::v_poset(), {});
  auto phi = fx::phi_v(v);
  ck.expect(verifies(phi, true), "check: not strong + bijective + diagonality-preserving");

  auto inv = extract_invariants(phi);
  ck.expect(inv.theta.is_identity(), "extract: theta != id");
  for (const auto& s : v->poset().strict_pairs()) ck.expect(inv.sigma.at(s) == Rational(1), "extract: sigma != 1");
  ck.expect(inv.nu.at({0, 1}) == e(v, 1) + e(v, 3), "extract: nu(e_12)");
  ck.expect(inv.nu.at({0, 2}) == e(v, 1) + e(v, 2), "extract: nu(e_13)");

  auto d = decompose(phi);
  for (Vertex x = 0; x < 3; ++x) ck.expect(d.alpha[x].is_zero(), "decompose: alpha nonzero on D");
  ck.expect(d.alpha[v->index(0, 1)] == e(v, 1) + e(v, 3), "decompose: alpha(e_12)");
  ck.expect(d.alpha[v->index(0, 2)] == e(v, 1) + e(v, 2), "decompose: alpha(e_13)");
  ck.expect(build_tau(v, d.theta, d.sigma, d.c, d.kappa) == LinearMap<fx::Q>::identity(v), "decompose: tau != id");
  ck.expect(d.kappa == Kappa<fx::Q>{Rational(1), Rational(0), Rational(0)}, "decompose: kappa != (1,0,0)");
}

void five_element(Check& ck) {
  auto a = Algebra<fx::Q>::create(fx::five_poset(), {});
  auto phi = fx::phi_five(a);
  auto inv = extract_invariants(phi);
  for (const auto& s : a->poset().strict_pairs()) {
    bool is15 = s == Pair{0, 4};
    ck.expect(inv.sigma.at(s) == Rational(is15 ? -1 : 1), "sigma(" + a->pair_key(s) + ")");
    bool upper = s.hi == 1 || s.hi == 2;
    ck.expect(inv.c.at(s) == Rational(upper ? 1 : -1), "c(" + a->pair_key(s) + ")");
  }
  ck.expect(check_c_constant_on_chains<fx::Q>(a->poset(), inv.c).constant, "c not chain-constant");
  auto lt = is_lie_type(phi);
  ck.expect(!lt.lie_type, "reported Lie type");
  ck.expect(lt.reasons == std::vector<std::string>{"c non-constant"}, "reason is not \"c non-constant\"");
}

void two_element(Check& ck) {
  auto c2 = Algebra<fx::Q>::create(fx::chain2(), {});
  auto lie = fx::phi_chain2_lie(c2);
  ck.expect(verifies(lie, true), "first map: not strong + bijective + diagonality-preserving");
  ck.expect(!is_lie_type(lie).lie_type, "first map: reported Lie type");

  auto phi = fx::phi_chain2_nondiag(c2);
  ck.expect(verifies(phi, false), "second map: not strong + bijective + non-diagonality-preserving");
  auto res = explore_conjecture(phi);
  ck.expect(res.found && res.conjugator.has_value(), "explore: nothing found");
  if (!res.found || !res.conjugator) return;

  // the worked alpha lies in the returned family alpha + span(directions)
  const auto& K = c2->field();
  auto worked = fx::alpha_chain2(c2);
  auto target = worked.coordinates(), base = res.alpha.coordinates();
  Matrix<fx::Q> dirs(target.size(), res.alpha_directions.size(), K);
  for (std::size_t k = 0; k < res.alpha_directions.size(); ++k) {
    auto col = res.alpha_directions[k].coordinates();
    for (std::size_t i = 0; i < col.size(); ++i) dirs(i, k) = col[i];
  }
  std::vector<Rational> diff(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) diff[i] = target[i] - base[i];
  ck.expect(solve(K, dirs, diff).has_value(), "explore: worked alpha not in the returned family");

  auto ginv = unipotent_inverse(*res.conjugator);
  auto shifted = build_shift(res.alpha).compose(phi);
  for (Vertex x = 0; x < 2; ++x)
    ck.expect((*res.conjugator * shifted.image(x) * ginv).is_diagonal(), "explore: g (S_alpha phi)(e_x) g^-1 not diagonal");
  // the conjugator also serves the worked alpha
  auto with_worked = build_shift(worked).compose(phi);
  for (Vertex x = 0; x < 2; ++x)
    ck.expect((*res.conjugator * with_worked.image(x) * ginv).is_diagonal(), "conjugator fails for the worked alpha");
  std::ostringstream os;
  os << "g = " << res.conjugator->str();
  ck.info = os.str();
}

template <ExactField F>
std::size_t round_trips(Check& ck, const F& K, std::uint64_t seed, std::size_t wanted) {
  gen::Rng rng(seed);
  std::size_t done = 0;
  while (done < wanted) {
    auto alg = Algebra<F>::create(gen::random_connected_poset(rng, gen::uniform(rng, 2, 5)), K);
    auto data = gen::random_tau_data(rng, K, alg->poset());
    if (!data) continue;
    ++done;
    try {
      auto d = decompose(build_tau(alg, data->theta, data->sigma, data->c, data->kappa));
      ck.expect(d.alpha == ShiftData<F>::zero(alg), "alpha != 0");
      ck.expect(d.theta == data->theta, "theta differs");
      ck.expect(d.sigma == data->sigma, "sigma differs");
      ck.expect(d.kappa == data->kappa, "kappa differs");
    } catch (const Error& err) {
      ck.expect(false, err.what());
    }
  }
  return done;
}

void round_trip(Check& ck) {
  auto q = round_trips(ck, RationalField{}, 401, 100);
  auto f = round_trips(ck, PrimeField(5), 402, 100);
  ck.info = std::to_string(q) + " over Q, " + std::to_string(f) + " over F_5";
}

void oracle_equivalence(Check& ck) {
  std::ostringstream os;
  for (std::uint32_t p : {2u, 3u}) {
    auto rep = oracle::run_oracle_suite(p, 4, 500, 500 + p);
    ck.expect(rep.skipped_posets == 0, "F_" + std::to_string(p) + ": posets skipped");
    ck.expect(rep.disagreements.empty(), "F_" + std::to_string(p) + ": " + std::to_string(rep.disagreements.size()) +
                                             " disagreements, first on " +
                                             (rep.disagreements.empty() ? "" : rep.disagreements[0].criterion));
    os << (p == 2 ? "" : "; ") << "F_" << p << ": " << rep.posets << " posets, " << rep.maps << " maps, "
       << rep.alphas << " alphas";
  }
  ck.info = os.str();
}

/// Closed walk at `start`: random Hasse steps, then back along the BFS tree.
Walk random_closed_walk(gen::Rng& rng, const Poset& P, Vertex start) {
  Walk w{{start}};
  std::size_t steps = gen::uniform(rng, 1, 16);
  for (std::size_t i = 0; i < steps; ++i) {
    const auto& nb = P.hasse_neighbors(w.vertices.back());
    w.vertices.push_back(nb[gen::uniform(rng, 0, nb.size() - 1)]);
  }
  auto back = P.find_walk(w.vertices.back(), start);
  w.vertices.insert(w.vertices.end(), back.vertices.begin() + 1, back.vertices.end());
  return w;
}

template <ExactField F>
void walks_agree(Check& ck, gen::Rng& rng, const F& K, const Poset& P, const BasisBijection& th,
                 const PairMap<typename F::value_type>& c, const std::string& name) {
  bool cycles = check_admissible(K, P, th, c).admissible;
  bool direct = true;
  for (int k = 0; k < 1000; ++k) {
    auto w = random_closed_walk(rng, P, gen::uniform(rng, 0, P.size() - 1));
    for (Vertex z = 0; z < P.size() && direct; ++z) direct = walk_sums(K, P, th, c, w, z).balanced();
  }
  ck.expect(cycles == direct, name + ": cycle basis says " + (cycles ? "admissible" : "not admissible") +
                                  ", closed walks disagree");
}

void admissibility(Check& ck) {
  auto cr = fx::crown();
  auto th = BasisBijection::from_map(cr, {{{0, 2}, {0, 3}}, {{0, 3}, {0, 2}}, {{1, 2}, {1, 2}}, {{1, 3}, {1, 3}}});
  RationalField Q;
  PrimeField F2(2);
  auto oneq = constant_map(cr, Rational(1));
  auto one2 = constant_map(cr, F2.one());
  auto rq = check_admissible(Q, cr, th, oneq);
  ck.expect(!rq.admissible, "crown accepted over Q");
  ck.expect(rq.z && cr.label(*rq.z) == "3", "witness z is not 3");
  ck.expect(check_admissible(F2, cr, th, one2).admissible, "crown rejected over F_2");

  gen::Rng rng(601);
  walks_agree(ck, rng, Q, cr, th, oneq, "crown/Q");
  walks_agree(ck, rng, F2, cr, th, one2, "crown/F_2");
  std::size_t configs = 2, rejected = 1;
  while (configs < 40) {
    auto P = gen::random_connected_poset(rng, gen::uniform(rng, 4, 6));
    if (P.fundamental_cycles().empty()) continue;
    auto thetas = gen::monotone_bijections(P, 50);
    const auto& t = thetas[gen::uniform(rng, 0, thetas.size() - 1)];
    auto c = gen::detail::random_chain_constant_c(rng, Q, P, false);
    rejected += !check_admissible(Q, P, t, c).admissible;
    walks_agree(ck, rng, Q, P, t, c, "random poset " + io::poset_to_json(P).dump());
    ++configs;
  }
  ck.info = std::to_string(configs) + " configurations, " + std::to_string(rejected) + " not admissible";
}

void chain_corollary(Check& ck) {
  gen::Rng rng(701);
  RationalField Q;
  std::size_t total = 0;
  for (std::size_t n : {3u, 4u, 5u}) {
    auto alg = Algebra<fx::Q>::create(gen::chain(n), Q);
    for (int t = 0; t < 50; ++t) {
      auto data = gen::random_tau_data(rng, Q, alg->poset());
      if (!data) {
        ck.expect(false, "no data generated on the " + std::to_string(n) + "-chain");
        continue;
      }
      auto L = build_shift(gen::random_shift_alpha(rng, alg))
                   .compose(build_tau(alg, data->theta, data->sigma, data->c, data->kappa));
      ck.expect(verifies(L, true), "synthesized map fails the hypotheses");
      auto lt = is_lie_type(L);
      ck.expect(lt.lie_type, std::to_string(n) + "-chain: not Lie type");
      if (lt.lie_type) ck.expect(bracket_preserving(*lt.psi), std::to_string(n) + "-chain: psi breaks a bracket");
      ++total;
    }
  }
  ck.info = std::to_string(total) + " maps";
}

template <ExactField F>
void identities(Check& ck, const F& K, std::uint64_t seed) {
  gen::Rng rng(seed);
  for (int t = 0; t < 1000; ++t) {
    auto alg = Algebra<F>::create(gen::random_connected_poset(rng, gen::uniform(rng, 2, 5)), K);
    auto f = gen::random_element(rng, alg), g = gen::random_element(rng, alg), h = gen::random_element(rng, alg);
    ck.expect((f * g) * h == f * (g * h), "associativity");
    ck.expect((bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g))).is_zero(), "Jacobi");
  }
}

void algebraic_invariants(Check& ck) {
  identities(ck, RationalField{}, 801);
  identities(ck, PrimeField(5), 802);
  identities(ck, PrimeField(2), 803);

  gen::Rng rng(804);
  for (int t = 0; t < 20; ++t) {
    auto alg = Algebra<fx::Q>::create(gen::random_connected_poset(rng, gen::uniform(rng, 2, 6)), {});
    ck.expect(center_dimension(alg) == 1, "center not one-dimensional");
  }

  std::size_t diagonals = 0;
  PrimeField F2(2);
  for (const auto& P : gen::small_posets(4)) {
    auto alg = Algebra<PrimeField>::create(P, F2);
    auto all = fx::all_elements(alg);
    for (const auto& d : all) {
      if (!d.is_diagonal()) continue;
      ++diagonals;
      auto formula = centralizer_of_diagonal(d);
      std::size_t commuting = 0;
      for (const auto& g : all) commuting += bracket(g, d).is_zero();
      ck.expect(commuting == (std::size_t{1} << formula.size()), "centralizer dimension");
      for (const auto& b : formula) ck.expect(bracket(b, d).is_zero(), "centralizer basis element fails to commute");
    }
    auto algq = Algebra<fx::Q>::create(P, {});
    for (const auto& s : P.strict_pairs())
      ck.expect(interval_centralizer_identity(algq, s.lo, s.hi), "interval identity at " + algq->pair_key(s));
  }
  ck.info = std::to_string(diagonals) + " diagonals over F_2";
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "V-poset example", 1, v_poset},
      {2, "5-element example", 1, five_element},
      {3, "2-element examples", 1, two_element},
      {4, "round-trip property suite", 30, round_trip},
      {5, "oracle equivalence over F_2 and F_3", 120, oracle_equivalence},
      {6, "admissibility", 10, admissibility},
      {7, "chain corollary", 30, chain_corollary},
      {8, "algebraic invariant suite", 60, algebraic_invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check ck;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(ck);
    } catch (const std::exception& ex) {
      ck.expect(false, std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ck.expect(secs < c.budget_s, "over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget");
    std::cout << (ck.ok() ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed
              << std::setprecision(2) << secs << " s)";
    if (!ck.info.empty()) std::cout << " " << ck.info;
    if (!ck.ok()) std::cout << " -- " << ck.notes();
    std::cout << std::endl;
    failed += !ck.ok();
  }
  return failed == 0 ? 0 : 1;
}
