// Command line surface for the wedgemeans library.
//
// Subcommands: chain, check, zonotope, search, reduce. Each prints a
// key-sorted JSON report on stdout. Exit status: 0 when every asserted
// inequality holds (or is an equality), 1 when a violation was detected or
// a monotonization step was infeasible, 2 on any error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wedgemeans.hpp"

using json = nlohmann::json;
using namespace wedgemeans;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitError = 2;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string digest_of(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json command_echo(int argc, char** argv) {
  json a = json::array();
  for (int i = 0; i < argc; ++i) a.push_back(std::string(argv[i]));
  return a;
}

json family_to_json(const VectorFamily& f) {
  json rows = json::array();
  for (int j = 0; j < f.count(); ++j) {
    json row = json::array();
    for (int i = 0; i < f.dim(); ++i) row.push_back(f.vector(j)(i));
    rows.push_back(row);
  }
  return json{{"dim", f.dim()}, {"count", f.count()}, {"vectors", rows}};
}

json report_to_json(const MaclaurinReport& r) {
  json verdicts = json::array();
  for (Verdict v : r.verdicts) verdicts.push_back(to_string(v));
  return json{{"p", std::isinf(r.p) ? json("inf") : json(r.p)},
              {"means", r.means},
              {"margins", r.margins},
              {"verdicts", verdicts},
              {"tolerance", r.tolerance},
              {"verdict", to_string(r.overall())}};
}

/// "0" -> 0, "inf" -> +inf, otherwise a decimal (negatives are probe mode).
double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") {
    return std::numeric_limits<double>::infinity();
  }
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw Error("cannot parse exponent '" + text + "'");
  }
  if (pos != text.size()) throw Error("cannot parse exponent '" + text + "'");
  if (std::isnan(v)) throw Error("exponent must not be NaN");
  return v;
}

PowerExponent exponent_from(double p) {
  if (p == 0.0) return PowerExponent::zero();
  if (std::isinf(p)) return PowerExponent::infinity();
  return PowerExponent::finite(p);
}

Eigen::VectorXd parse_direction(const std::string& text, int dim) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) coords.push_back(std::stod(tok));
  if (static_cast<int>(coords.size()) != dim) {
    throw Error("direction needs " + std::to_string(dim) + " comma-separated coordinates");
  }
  Eigen::VectorXd u(dim);
  for (int i = 0; i < dim; ++i) u(i) = coords[i];
  const double n = u.norm();
  if (n == 0.0) throw Error("direction must be nonzero");
  return u / n;  // normalized; the library requires unit directions
}

int exit_code_of(Verdict v) {
  return v == Verdict::violated ? kExitViolated : kExitHolds;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void emit(json& report, const Timer& timer) {
  report["wall_time_s"] = timer.seconds();
  std::cout << report.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

int cmd_chain(int argc, char** argv, const std::vector<double>& xs, double tol) {
  Timer timer;
  const MaclaurinReport r = check_classical_maclaurin(xs, tol);
  std::string echo;
  for (double x : xs) echo += format_17g(x) + " ";
  json report;
  report["command"] = command_echo(argc, argv);
  report["input_digest"] = digest_of(echo);
  report["check"] = "classical_maclaurin";
  report["report"] = report_to_json(r);
  emit(report, timer);
  return exit_code_of(r.overall());
}

int cmd_check(int argc, char** argv, const std::string& path, const std::string& p_text,
              int k_max, double tol, std::uint64_t cap) {
  Timer timer;
  const std::string bytes = slurp(path);
  std::istringstream in(bytes);
  const VectorFamily family = read_family(in);
  const double p = parse_p(p_text);
  if (k_max <= 0) k_max = family.dim();

  const MaclaurinReport r =
      p < 0.0 ? probe_vector_maclaurin(family, p, k_max, tol, cap)
              : check_vector_maclaurin(family, exponent_from(p), k_max, tol, cap);
  json report;
  report["command"] = command_echo(argc, argv);
  report["input_digest"] = digest_of(bytes);
  report["check"] = p < 0.0 ? "vector_maclaurin_probe" : "vector_maclaurin";
  report["family"] = {{"dim", family.dim()}, {"count", family.count()}};
  report["report"] = report_to_json(r);
  emit(report, timer);
  return exit_code_of(r.overall());
}

int cmd_zonotope(int argc, char** argv, const std::string& path, int k_max,
                 const std::string& direction_text, double tol, std::uint64_t cap) {
  Timer timer;
  const std::string bytes = slurp(path);
  std::istringstream in(bytes);
  const VectorFamily generators = read_family(in);
  const Zonotope z(generators);
  const int d = z.dim();
  if (k_max <= 0 || k_max > d) k_max = d;

  json report;
  report["command"] = command_echo(argc, argv);
  report["input_digest"] = digest_of(bytes);
  report["check"] = "zonotope";
  report["generators"] = {{"dim", d}, {"count", z.count()}};
  report["tolerance"] = tol;

  const IntrinsicVolumeVector vols = intrinsic_volumes(z, k_max, cap);
  report["intrinsic_volumes"] = vols.values;

  bool violated = false;

  json mcmullen = json::array();
  for (int j = 1; j <= std::min(k_max, d) - 1 && j < z.count(); ++j) {
    const McMullenMargins m = check_mcmullen_zonotope(z, j, cap);
    if (m.weak_margin < -tol) violated = true;
    mcmullen.push_back(json{{"j", j},
                            {"weak_factor", m.weak_factor},
                            {"weak_margin", m.weak_margin},
                            {"strong_factor", m.strong_factor},
                            {"strong_margin", m.strong_margin}});
  }
  report["mcmullen"] = mcmullen;

  if (!direction_text.empty()) {
    const Eigen::VectorXd u = parse_direction(direction_text, d);
    json udoc = json::array();
    for (int i = 0; i < d; ++i) udoc.push_back(u(i));
    report["direction"] = udoc;

    const Zonotope projected = project_generators(z, u);
    json proj = json::array();
    for (int k = 0; k <= std::min(k_max, d - 1); ++k) {
      const double direct = projected_intrinsic_volume(z, u, k, cap);
      const double via_projection = intrinsic_volume(projected, k, cap);
      proj.push_back(json{{"k", k},
                          {"direct", direct},
                          {"via_projected_generators", via_projection}});
    }
    report["projected_intrinsic_volumes"] = proj;

    json ratios = json::array();
    for (int k = 2; k <= k_max; ++k) {
      json entry{{"k", k}};
      try {
        const ProjectionMargin sharp = check_projection_inequality(z, u, k, true, cap);
        entry["sharp_margin"] = sharp.margin;  // recorded, not asserted
        if (k >= 3) {
          const ProjectionMargin constant = check_projection_inequality(z, u, k, false, cap);
          entry["constant"] = constant.constant;
          entry["constant_margin"] = constant.margin;
          if (constant.margin < -tol) violated = true;
        }
      } catch (const ZeroDenominator&) {
        entry["degenerate"] = true;
      }
      ratios.push_back(entry);
    }
    report["projection_inequalities"] = ratios;
  }

  report["verdict"] = violated ? "violated" : "holds";
  emit(report, timer);
  return violated ? kExitViolated : kExitHolds;
}

SearchConfig config_from_json(const json& doc) {
  SearchConfig cfg;
  if (doc.contains("dims")) {
    cfg.dims.clear();
    for (const auto& pair : doc.at("dims")) {
      cfg.dims.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    }
  }
  if (doc.contains("ks")) cfg.ks = doc.at("ks").get<std::vector<int>>();
  if (doc.contains("ps")) {
    cfg.ps.clear();
    for (const auto& p : doc.at("ps")) {
      cfg.ps.push_back(p.is_string() ? parse_p(p.get<std::string>()) : p.get<double>());
    }
  }
  if (doc.contains("restarts")) cfg.restarts = doc.at("restarts").get<int>();
  if (doc.contains("steps")) cfg.steps = doc.at("steps").get<int>();
  if (doc.contains("scale")) cfg.scale = doc.at("scale").get<double>();
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("distribution")) {
    const std::string name = doc.at("distribution").get<std::string>();
    if (name == "gaussian") {
      cfg.distribution = Distribution::gaussian();
    } else if (name == "uniform-cube" || name == "uniform_cube") {
      cfg.distribution = Distribution::uniform_cube();
    } else if (name == "near-orthonormal" || name == "near_orthonormal") {
      cfg.distribution =
          Distribution::near_orthonormal(doc.value("near_orthonormal_eps", 0.1));
    } else {
      throw Error("unknown distribution '" + name + "'");
    }
  }
  if (doc.contains("cap")) cfg.cap = doc.at("cap").get<std::uint64_t>();
  return cfg;
}

int cmd_search(int argc, char** argv, const std::string& config_path,
               const std::string& seed_text, int threads, const std::string& witness_out,
               double tol, std::uint64_t cap_flag) {
  Timer timer;
  json doc = json::object();
  std::string bytes = "{}";
  if (!config_path.empty()) {
    bytes = slurp(config_path);
    doc = json::parse(bytes);
  }
  SearchConfig cfg = config_from_json(doc);
  std::string target_name = doc.value("target", std::string("maclaurin"));

  // seed precedence: --seed flag, then config, then environment, then default
  if (!seed_text.empty()) {
    cfg.seed = std::stoull(seed_text);
  } else if (!doc.contains("seed")) {
    if (const char* env = std::getenv("WEDGEMEANS_SEED")) cfg.seed = std::stoull(env);
  }
  if (cap_flag != 0) cfg.cap = cap_flag;

  json report;
  report["command"] = command_echo(argc, argv);
  report["input_digest"] = digest_of(bytes);
  report["check"] = "violation_search";
  report["target"] = target_name;
  report["seed"] = cfg.seed;
  report["tolerance"] = tol;
  report["restarts"] = cfg.restarts;
  report["steps"] = cfg.steps;

  double global_best = std::numeric_limits<double>::infinity();
  std::optional<VectorFamily> global_witness;
  json combos = json::array();
  std::string witness_label;

  const auto run_combo = [&](const SearchTarget& target, const std::string& label) {
    const SearchResult res = violation_search(cfg, target, threads);
    json entry{{"target", label},
               {"best_margin", res.best_margin},
               {"evaluations", res.evaluations},
               {"trace", res.trace}};
    combos.push_back(entry);
    if (res.best_margin < global_best) {
      global_best = res.best_margin;
      global_witness = res.witness;
      witness_label = label;
    }
  };

  for (int k : cfg.ks) {
    if (target_name == "maclaurin") {
      for (double p : cfg.ps) {
        char label[64];
        std::snprintf(label, sizeof label, "maclaurin(p=%.17g,k=%d)", p, k);
        run_combo(SearchTarget::maclaurin(p, k), label);
      }
    } else if (target_name == "newton") {
      run_combo(SearchTarget::newton(k), "newton(k=" + std::to_string(k) + ")");
    } else if (target_name == "reduction") {
      run_combo(SearchTarget::reduction(k), "reduction(k=" + std::to_string(k) + ")");
    } else if (target_name == "projection_sharp") {
      run_combo(SearchTarget::projection_sharp(k),
                "projection_sharp(k=" + std::to_string(k) + ")");
    } else {
      throw Error("unknown search target '" + target_name + "'");
    }
  }

  report["results"] = combos;
  report["best_margin"] = global_best;
  const bool violated = global_best < -tol;
  report["verdict"] = violated ? "violated" : "holds";

  if (global_witness) {
    write_family_file(witness_out, *global_witness,
                      {"wedgemeans search witness", "target: " + witness_label,
                       "margin: " + format_17g(global_best),
                       "seed: " + std::to_string(cfg.seed)});
    report["witness_file"] = witness_out;
    report["witness"] = family_to_json(*global_witness);
  }

  emit(report, timer);
  return violated ? kExitViolated : kExitHolds;
}

int cmd_reduce(int argc, char** argv, const std::string& path, int k,
               const std::string& out_path, double tol, std::uint64_t cap) {
  Timer timer;
  const std::string bytes = slurp(path);
  std::istringstream in(bytes);
  const VectorFamily family = read_family(in);

  json report;
  report["command"] = command_echo(argc, argv);
  report["input_digest"] = digest_of(bytes);
  report["check"] = "reduction";
  report["k"] = k;
  report["tolerance"] = tol;

  const RatioPair pair = check_reduction(family, k, tol, cap);
  report["ratio_pair"] = json{{"pivot", pair.pivot}, {"j_hi", pair.j_hi},
                              {"j_lo", pair.j_lo},   {"r_hi", pair.r_hi},
                              {"r_lo", pair.r_lo},   {"feasible", pair.feasible}};

  const PowerExponent one = PowerExponent::finite(1.0);
  const double mk_before = s_k_p(family, k, one, cap).mean;
  const double mk1_before = s_k_p(family, k - 1, one, cap).mean;

  try {
    const VectorFamily ortho = monotone_orthogonalize(family, k, cap);
    const double mk_after = s_k_p(ortho, k, one, cap).mean;
    const double mk1_after = s_k_p(ortho, k - 1, one, cap).mean;
    report["means"] = json{{"m_k_before", mk_before},
                           {"m_k_after", mk_after},
                           {"m_k_minus_1_before", mk1_before},
                           {"m_k_minus_1_after", mk1_after}};
    const bool sandwich_ok = mk_after >= mk_before * (1.0 - 1e-9) &&
                             mk1_after <= mk1_before * (1.0 + 1e-9);
    report["sandwich_holds"] = sandwich_ok;

    std::vector<double> norms;
    for (int i = 0; i < ortho.count(); ++i) norms.push_back(ortho.norm_of(i));
    report["orthogonal_norm_chain"] = report_to_json(check_classical_maclaurin(norms, tol));
    report["orthogonalized"] = family_to_json(ortho);
    if (!out_path.empty()) {
      write_family_file(out_path, ortho, {"wedgemeans reduce output", "k: " + std::to_string(k)});
      report["output_file"] = out_path;
    }
    report["verdict"] = sandwich_ok ? "holds" : "violated";
    emit(report, timer);
    return sandwich_ok ? kExitHolds : kExitViolated;
  } catch (const InfeasibleInterval& e) {
    // research event for k outside {2, 3, d}: report it rather than crash
    report["infeasible_at_step"] = e.step;
    report["error"] = e.what();
    report["verdict"] = "infeasible";
    emit(report, timer);
    return kExitViolated;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wedge-volume symmetric means, inequality checks, and violation search"};
  app.require_subcommand(1);

  // chain
  auto* chain = app.add_subcommand("chain", "classical Maclaurin chain on positive reals");
  std::vector<double> chain_xs;
  double chain_tol = kDefaultMarginTol;
  chain->add_option("values", chain_xs, "positive real numbers")->required()->expected(-1);
  chain->add_option("--tol", chain_tol, "margin tolerance");

  // check
  auto* check = app.add_subcommand("check", "vector Maclaurin chain of a family file");
  std::string check_path, check_p = "1";
  int check_k = 0;
  double check_tol = kDefaultMarginTol;
  std::uint64_t check_cap = kDefaultSubsetCap;
  check->add_option("path", check_path, "family file")->required();
  check->add_option("--p", check_p, "exponent: 0, inf, a decimal, or negative (probe)");
  check->add_option("--k", check_k, "largest subset size (default: dim)");
  check->add_option("--tol", check_tol, "margin tolerance");
  check->add_option("--cap", check_cap, "subset enumeration cap");

  // zonotope
  auto* zono = app.add_subcommand("zonotope", "intrinsic volumes of a generator file");
  std::string zono_path, zono_dir;
  int zono_k = 0;
  double zono_tol = kDefaultMarginTol;
  std::uint64_t zono_cap = kDefaultSubsetCap;
  zono->add_option("path", zono_path, "generator family file")->required();
  zono->add_option("--k", zono_k, "largest intrinsic volume order (default: dim)");
  zono->add_option("--direction", zono_dir, "comma-separated projection direction");
  zono->add_option("--tol", zono_tol, "margin tolerance");
  zono->add_option("--cap", zono_cap, "subset enumeration cap");

  // search
  auto* search = app.add_subcommand("search", "seeded randomized violation search");
  std::string search_config, search_seed, search_witness = "witness.family";
  int search_threads = 1;
  double search_tol = kDefaultMarginTol;
  std::uint64_t search_cap = 0;
  search->add_option("config", search_config, "JSON config (defaults: negative-p probe)");
  search->add_option("--seed", search_seed, "seed override (wins over config and env)");
  search->add_option("--threads", search_threads, "parallel restarts");
  search->add_option("--witness-out", search_witness, "witness family output path");
  search->add_option("--tol", search_tol, "violation tolerance");
  search->add_option("--cap", search_cap, "subset enumeration cap");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "monotone orthogonalization of a family file");
  std::string reduce_path, reduce_out;
  int reduce_k = 0;
  double reduce_tol = kDefaultMarginTol;
  std::uint64_t reduce_cap = kDefaultSubsetCap;
  reduce->add_option("path", reduce_path, "family file (m = d)")->required();
  reduce->add_option("--k", reduce_k, "chain index k")->required();
  reduce->add_option("--out", reduce_out, "write the orthogonalized family here");
  reduce->add_option("--tol", reduce_tol, "margin tolerance");
  reduce->add_option("--cap", reduce_cap, "subset enumeration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (chain->parsed()) return cmd_chain(argc, argv, chain_xs, chain_tol);
    if (check->parsed()) {
      return cmd_check(argc, argv, check_path, check_p, check_k, check_tol, check_cap);
    }
    if (zono->parsed()) {
      return cmd_zonotope(argc, argv, zono_path, zono_k, zono_dir, zono_tol, zono_cap);
    }
    if (search->parsed()) {
      return cmd_search(argc, argv, search_config, search_seed, search_threads,
                        search_witness, search_tol, search_cap);
    }
    if (reduce->parsed()) {
      return cmd_reduce(argc, argv, reduce_path, reduce_k, reduce_out, reduce_tol,
                        reduce_cap);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line << ", field '" << e.field
              << "')\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
