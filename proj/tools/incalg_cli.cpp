// incalg: command-line front end.
//
// Exit codes: 0 verdict true or success, 1 verdict false or unmet
// hypotheses, 2 input error (bad flags, unreadable or malformed files).

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "incalg/io.hpp"
#include "incalg/oracle_suite.hpp"

using namespace incalg;
using io::Json;

namespace {

struct Options {
  std::string poset, field = "Q", map, theta, sigma, c, kappa, alpha, out;
  std::uint64_t seed = 1;
  std::size_t samples = 500, bound = 4;
};

struct Outcome {
  int code = 0;
  std::vector<std::string> summary;
  Json report = Json::object();
};

/// Parses `path` with `fn`, prefixing any error with the file name.
template <class Fn>
auto from_file(const std::string& path, Fn&& fn) {
  auto j = io::read_json_file(path);
  try {
    return fn(j);
  } catch (const Error& e) {
    throw Error(e.kind(), "file '" + path + "': " + e.detail());
  }
}

const char* yes(bool b) { return b ? "yes" : "no"; }

template <ExactField F>
AlgebraPtr<F> load_algebra(const Options& o, const F& K) {
  return Algebra<F>::create(from_file(o.poset, [](const Json& j) { return io::poset_from_json(j); }), K);
}

template <ExactField F>
LinearMap<F> load_map(const Options& o, const AlgebraPtr<F>& alg) {
  return from_file(o.map, [&](const Json& j) { return io::map_from_json(alg, j); });
}

template <ExactField F>
Json element_list(const std::vector<Element<F>>& es) {
  Json j = Json::array();
  for (const auto& e : es) j.push_back(io::element_to_json(e));
  return j;
}

template <ExactField F>
Outcome run_check(const Options& o, const F& K) {
  auto alg = load_algebra(o, K);
  auto L = load_map(o, alg);
  Outcome out;
  auto comm = check_commutativity_preserver(L);
  bool bij = is_bijective(L), diag = is_diagonality_preserver(L);
  out.report["commutativity_preserver"] = comm.holds;
  Json viol = Json::array();
  for (const auto& v : comm.violations) viol.push_back(v.str());
  out.report["violations"] = viol;
  out.summary.push_back(std::string("commutativity preserver: ") + yes(comm.holds));
  bool strong = false;
  if (comm.holds) {
    auto sv = is_strong_preserver(L);
    strong = sv.strong;
    out.report["strong"] = sv.strong;
    out.report["strong_method"] = to_string(sv.method);
    out.summary.push_back(std::string("strong: ") + yes(sv.strong) + " (" + to_string(sv.method) + ")");
  } else {
    out.report["strong"] = false;
    out.summary.push_back("first violation: " + comm.violations.front().str());
  }
  out.report["bijective"] = bij;
  out.report["diagonality_preserving"] = diag;
  out.summary.push_back(std::string("bijective: ") + yes(bij));
  out.summary.push_back(std::string("diagonality-preserving: ") + yes(diag));
  std::string verdict = !comm.holds ? "not a commutativity preserver"
                                    : std::string(strong ? "strong" : "not strong") + ", " +
                                          (diag ? "diagonality-preserving" : "not diagonality-preserving");
  if (comm.holds && !bij) verdict += ", not bijective";
  out.report["verdict"] = verdict;
  out.summary.push_back("report: " + verdict);
  out.code = comm.holds && strong && bij && diag ? 0 : 1;
  return out;
}

template <ExactField F>
Outcome run_extract(const Options& o, const F& K) {
  auto alg = load_algebra(o, K);
  auto L = load_map(o, alg);
  auto inv = extract_invariants(L);
  const auto& P = alg->poset();
  Outcome out;
  Json nu = Json::object();
  for (const auto& [p, e] : inv.nu) nu[io::pair_key(P, p)] = io::element_to_json(e);
  out.report["theta"] = io::theta_to_json(P, inv.theta);
  out.report["sigma"] = io::pairmap_to_json(K, P, inv.sigma);
  out.report["nu"] = nu;
  out.report["c"] = io::pairmap_to_json(K, P, inv.c);
  out.summary.push_back(std::string("theta is identity: ") + yes(inv.theta.is_identity()));
  for (const auto& s : P.strict_pairs())
    out.summary.push_back(alg->basis_name(alg->index(s)) + ": theta -> " + alg->basis_name(alg->index(inv.theta(s))) +
                          ", sigma = " + K.format(inv.sigma.at(s)) + ", c = " + K.format(inv.c.at(s)) +
                          ", nu = " + inv.nu.at(s).str());
  return out;
}

template <ExactField F>
Outcome run_decompose(const Options& o, const F& K) {
  auto alg = load_algebra(o, K);
  auto d = decompose(load_map(o, alg));
  Outcome out;
  out.report = io::decomposition_to_json(d);
  out.summary.push_back(std::string("theta is identity: ") + yes(d.theta.is_identity()));
  for (std::size_t j = 0; j < alg->dim(); ++j)
    if (!d.alpha[j].is_zero()) out.summary.push_back("alpha(" + alg->basis_name(j) + ") = " + d.alpha[j].str());
  std::string kap;
  for (const auto& k : d.kappa) kap += (kap.empty() ? "" : ", ") + K.format(k);
  out.summary.push_back("kappa = (" + kap + ")");
  return out;
}

template <ExactField F>
Outcome run_synthesize(const Options& o, const F& K) {
  auto alg = load_algebra(o, K);
  const auto& P = alg->poset();
  auto th = from_file(o.theta, [&](const Json& j) { return io::theta_from_json(P, j); });
  auto sigma = from_file(o.sigma, [&](const Json& j) { return io::pairmap_from_json(K, P, j, "sigma"); });
  auto c = from_file(o.c, [&](const Json& j) { return io::pairmap_from_json(K, P, j, "c"); });
  auto kappa = from_file(o.kappa, [&](const Json& j) { return io::kappa_from_json(K, j); });
  auto tau = build_tau(alg, th, sigma, c, kappa);
  Outcome out;
  out.report = io::map_to_json(tau);
  out.summary.push_back("synthesized a bijective strong diagonality-preserving commutativity preserver");
  for (Vertex x = 0; x < alg->n(); ++x)
    out.summary.push_back("tau(" + alg->basis_name(x) + ") = " + tau.image(x).str());
  return out;
}

template <ExactField F>
Outcome run_shift(const Options& o, const F& K) {
  auto alg = load_algebra(o, K);
  auto a = from_file(o.alpha, [&](const Json& j) { return io::alpha_from_json(alg, j); });
  auto rep = validate_alpha(a);
  Outcome out;
  Json conds = Json::array();
  for (bool b : rep.cond) conds.push_back(b);
  Json viol = Json::array();
  for (const auto& v : rep.violations) viol.push_back(v);
  out.report["conditions"] = conds;
  out.report["commutativity_preserver"] = rep.comm_preserver;
  out.report["strong"] = rep.strong;
  out.report["bijective"] = rep.bijective;
  out.report["violations"] = viol;
  if (rep.comm_preserver) out.report["map"] = io::map_to_json(shift_map(a));
  out.summary.push_back(std::string("S_alpha commutativity preserver: ") + yes(rep.comm_preserver));
  out.summary.push_back(std::string("strong: ") + yes(rep.strong));
  out.summary.push_back(std::string("bijective: ") + yes(rep.bijective));
  for (const auto& v : rep.violations) out.summary.push_back(v);
  out.code = rep.comm_preserver ? 0 : 1;
  return out;
}

template <ExactField F>
Outcome run_admissible(const Options& o, const F& K) {
  auto alg = load_algebra(o, K);
  const auto& P = alg->poset();
  auto th = from_file(o.theta, [&](const Json& j) { return io::theta_from_json(P, j); });
  auto c = from_file(o.c, [&](const Json& j) { return io::pairmap_from_json(K, P, j, "c"); });
  auto rep = check_admissible(K, P, th, c);
  Outcome out;
  out.report["admissible"] = rep.admissible;
  out.summary.push_back(std::string("admissible: ") + yes(rep.admissible));
  if (!rep.admissible) {
    const auto& ws = *rep.sums;
    out.report["witness"] = Json{{"z", io::label_json(P, *rep.z)},
                                 {"cycle", io::walk_to_json(P, *rep.cycle)},
                                 {"s_plus", io::scalar_to_json(K, ws.s_plus)},
                                 {"s_minus", io::scalar_to_json(K, ws.s_minus)},
                                 {"t_plus", io::scalar_to_json(K, ws.t_plus)},
                                 {"t_minus", io::scalar_to_json(K, ws.t_minus)}};
    out.summary.push_back("witness z = " + P.label(*rep.z) + " on cycle " +
                          io::walk_to_json(P, *rep.cycle).dump());
  }
  out.code = rep.admissible ? 0 : 1;
  return out;
}

template <ExactField F>
Outcome run_lietype(const Options& o, const F& K) {
  auto alg = load_algebra(o, K);
  auto v = is_lie_type(load_map(o, alg));
  Outcome out;
  out.report["lie_type"] = v.lie_type;
  out.report["reasons"] = v.reasons;
  out.summary.push_back(std::string("Lie type: ") + yes(v.lie_type));
  for (const auto& r : v.reasons) out.summary.push_back("reason: " + r);
  if (v.lie_type) {
    out.report["k"] = io::scalar_to_json(K, *v.k);
    out.report["psi"] = io::map_to_json(*v.psi);
    out.report["xi"] = io::map_to_json(*v.xi);
    out.summary.push_back("k = " + K.format(*v.k));
  }
  out.code = v.lie_type ? 0 : 1;
  return out;
}

template <ExactField F>
Outcome run_explore(const Options& o, const F& K) {
  auto alg = load_algebra(o, K);
  auto r = explore_conjecture(load_map(o, alg));
  Outcome out;
  out.report["found"] = r.found;
  out.report["note"] = r.note;
  out.summary.push_back(std::string("found: ") + yes(r.found) + " (" + r.note + ")");
  if (r.found) {
    Json dirs = Json::array();
    for (const auto& d : r.alpha_directions) dirs.push_back(io::alpha_to_json(d));
    out.report["alpha"] = io::alpha_to_json(r.alpha);
    out.report["alpha_directions"] = dirs;
    out.report["conjugator"] = io::element_to_json(*r.conjugator);
    out.report["diagonalized"] = element_list(r.diagonalized);
    for (std::size_t j = 0; j < alg->dim(); ++j)
      if (!r.alpha[j].is_zero()) out.summary.push_back("alpha(" + alg->basis_name(j) + ") = " + r.alpha[j].str());
    if (!r.alpha_directions.empty())
      out.summary.push_back("plus any combination of " + std::to_string(r.alpha_directions.size()) + " directions");
    out.summary.push_back("g = " + r.conjugator->str());
    for (Vertex x = 0; x < alg->n(); ++x)
      out.summary.push_back("g (S_alpha phi)(" + alg->basis_name(x) + ") g^-1 = " + r.diagonalized[x].str());
  }
  out.code = r.found ? 0 : 1;
  return out;
}

Outcome run_oracle(const Options& o) {
  auto spec = FieldSpec::parse(o.field);
  if (spec.kind != FieldSpec::Kind::Prime || (spec.modulus != 2 && spec.modulus != 3))
    throw Error(ErrorKind::SchemaError, "field '--field': oracle runs over Fp:2 or Fp:3 only");
  if (o.bound < 2 || o.bound > 4) throw Error(ErrorKind::SchemaError, "field '--bound': must be 2, 3 or 4");
  auto rep = oracle::run_oracle_suite(spec.modulus, o.bound, o.samples, o.seed);
  Outcome out;
  out.report = rep.to_json();
  out.summary.push_back("posets: " + std::to_string(rep.posets) + ", maps: " + std::to_string(rep.maps) +
                        ", alphas: " + std::to_string(rep.alphas));
  out.summary.push_back("disagreements: " + std::to_string(rep.disagreements.size()));
  for (const auto& d : rep.disagreements) out.summary.push_back("  " + d.criterion + " on " + d.poset);
  out.code = rep.disagreements.empty() ? 0 : 1;
  return out;
}

/// Errors that mean the mathematical hypotheses failed rather than the input.
bool is_verdict_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::HypothesesNotMet:
    case ErrorKind::NotPureDecomposable:
    case ErrorKind::ThetaNotBijective:
    case ErrorKind::ZeroC:
    case ErrorKind::PreconditionFailed:
    case ErrorKind::NotCommPreserver:
    case ErrorKind::InvalidAlpha:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commutativity preservers of incidence algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_poset = [&](CLI::App* s) {
    s->add_option("--poset", o.poset, "poset JSON")->required();
    s->add_option("--field", o.field, "Q or Fp:<p>")->capture_default_str();
  };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out, "write the JSON report here"); };

  struct Cmd {
    const char* name;
    const char* help;
    std::vector<std::pair<const char*, std::string*>> files;
  };
  std::vector<Cmd> cmds = {
      {"check", "commutativity, strongness, bijectivity and diagonality of a map", {{"--map", &o.map}}},
      {"extract", "theta, sigma, nu and c of a map", {{"--map", &o.map}}},
      {"decompose", "phi = S_alpha o tau", {{"--map", &o.map}}},
      {"synthesize",
       "build tau from (theta, sigma, c, kappa)",
       {{"--theta", &o.theta}, {"--sigma", &o.sigma}, {"--c", &o.c}, {"--kappa", &o.kappa}}},
      {"shift", "validate alpha and build S_alpha", {{"--alpha", &o.alpha}}},
      {"admissible", "admissibility of (theta, c)", {{"--theta", &o.theta}, {"--c", &o.c}}},
      {"lietype", "Lie-type classification", {{"--map", &o.map}}},
      {"explore", "search for a shift and conjugator making a map preserve diagonality", {{"--map", &o.map}}},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : cmds) {
    auto* s = app.add_subcommand(c.name, c.help);
    add_poset(s);
    for (const auto& [flag, dest] : c.files) s->add_option(flag, *dest, "JSON file")->required();
    add_out(s);
    subs.push_back(s);
  }
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force cross-validation over F_2 or F_3");
  oracle_cmd->add_option("--field", o.field, "Fp:2 or Fp:3")->required();
  oracle_cmd->add_option("--bound", o.bound, "largest poset size")->capture_default_str();
  oracle_cmd->add_option("--samples", o.samples, "maps and alphas per poset")->capture_default_str();
  oracle_cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  add_out(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    Outcome out;
    if (name == "oracle") {
      out = run_oracle(o);
      out.report["seed"] = o.seed;
    } else {
      auto spec = FieldSpec::parse(o.field);
      out = with_field(spec, [&](const auto& K) {
        if (name == "check") return run_check(o, K);
        if (name == "extract") return run_extract(o, K);
        if (name == "decompose") return run_decompose(o, K);
        if (name == "synthesize") return run_synthesize(o, K);
        if (name == "shift") return run_shift(o, K);
        if (name == "admissible") return run_admissible(o, K);
        if (name == "lietype") return run_lietype(o, K);
        return run_explore(o, K);
      });
      out.report["field"] = spec.str();
    }
    for (const auto& line : out.summary) std::cout << line << "\n";
    if (!o.out.empty()) {
      io::write_json_file(o.out, out.report);
    } else {
      std::cout << out.report.dump(2) << "\n";
    }
    return out.code;
  } catch (const Error& e) {
    std::cerr << name << ": " << e.what() << "\n";
    if (e.is_input_error() || e.kind() == ErrorKind::BruteForceInfeasible) return 2;
    if (is_verdict_error(e.kind())) return 1;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << name << ": internal error: " << e.what() << "\n";
    return 3;
  }
}
