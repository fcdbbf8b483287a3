// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit when
// anything failed. The CLI binary path is argv[1]; criteria that drive the
// CLI fail cleanly when it is missing.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wedgemeans.hpp"

using json = nlohmann::json;
using namespace wedgemeans;

namespace {

std::string g_cli;  // path to the wedgemeans binary, may be empty

// --- tiny harness -----------------------------------------------------------

struct Outcome {
  bool pass = true;
  std::string detail;
  std::uint64_t digest = 1469598103934665603ULL;  // FNV-1a over reported numbers

  void log(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    for (int i = 0; i < n; ++i) {
      digest ^= static_cast<unsigned char>(buf[i]);
      digest *= 1099511628211ULL;
    }
  }
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  if (g_cli.empty()) return r;
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "wedgemeans_acceptance";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = n(g);
  return m;
}

VectorFamily gaussian_family(int m, int d, std::mt19937_64& g) {
  return VectorFamily(d, gaussian_matrix(d, m, g));
}

Eigen::MatrixXd random_rotation(int d, std::mt19937_64& g) {
  Eigen::MatrixXd a = gaussian_matrix(d, d, g);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

// --- criteria ----------------------------------------------------------------

// 1. classical anchor through the CLI
Outcome criterion_chain() {
  Outcome o;
  if (g_cli.empty()) {
    o.fail("cli binary path not provided");
    return o;
  }
  const RunResult r = run_cli("chain 1 2 3");
  o.expect(r.status == 0, "expected exit 0, got " + std::to_string(r.status));
  if (r.status != 0) return o;
  const json doc = json::parse(r.output, nullptr, false);
  if (doc.is_discarded()) {
    o.fail("stdout is not JSON");
    return o;
  }
  const auto means = doc.at("report").at("means").get<std::vector<double>>();
  const double expected[] = {2.0, 1.914854, 1.817121};
  o.expect(means.size() == 3, "expected three means");
  for (std::size_t i = 0; i < means.size(); ++i) {
    o.log(means[i]);
    o.expect(std::abs(means[i] - expected[i]) <= 1e-6,
             "mean " + std::to_string(i + 1) + " = " + fmt(means[i]));
    if (i > 0) o.expect(means[i] <= means[i - 1], "means increase");
  }
  return o;
}

// 2. orthonormal equality case across every checker
Outcome criterion_equality() {
  Outcome o;
  std::mt19937_64 g(0xC0FFEE02);
  for (int d = 2; d <= 8; ++d) {
    for (int rep = 0; rep < 5; ++rep) {
      const VectorFamily f =
          rep == 0 ? VectorFamily::standard_basis(d)
                   : VectorFamily(d, random_rotation(d, g));
      const PowerExponent ps[] = {PowerExponent::zero(), PowerExponent::finite(1.0),
                                  PowerExponent::finite(2.0), PowerExponent::infinity()};
      for (const auto& p : ps) {
        const MaclaurinReport r = check_vector_maclaurin(f, p, d);
        for (double m : r.margins) {
          o.log(m);
          o.expect(std::abs(m) <= 1e-12,
                   "maclaurin margin " + fmt(m) + " at d=" + std::to_string(d));
        }
      }
      for (int k = 2; k <= d - 1; ++k) {
        const double nm = check_vector_newton(f, k);
        o.log(nm);
        o.expect(std::abs(nm) <= 1e-12, "newton margin " + fmt(nm));
        const double sm = check_szasz(gram(f), k).margin;
        o.log(sm);
        o.expect(std::abs(sm) <= 1e-12, "szasz margin " + fmt(sm));
      }
      for (int k = 2; k <= d; ++k) {
        const RatioPair rp = check_reduction(f, k);
        o.log(rp.r_lo - rp.r_hi);
        o.expect(std::abs(rp.r_lo - rp.r_hi) <= 1e-12, "reduction ratios differ");
      }
      for (int k = 3; k <= d; ++k) {
        const NonSharpResult ns = check_nonsharp(f, k);
        o.log(ns.ratio);
        o.expect(std::abs(ns.ratio - 1.0) <= 1e-12, "non-sharp ratio off equality");
      }
    }
  }
  return o;
}

// 3. p=2 chain sweep with the eigen/enumeration cross-check
Outcome criterion_p2() {
  Outcome o;
  std::mt19937_64 g(0xC0FFEE03);
  double worst = 1.0;
  for (int d = 3; d <= 8; ++d) {
    for (int rep = 0; rep < 1000; ++rep) {
      const VectorFamily f = gaussian_family(d, d, g);
      const MaclaurinReport r = check_vector_maclaurin(f, PowerExponent::finite(2.0), d);
      for (double m : r.margins) {
        worst = std::min(worst, m);
        o.expect(m >= -1e-10, "p=2 margin " + fmt(m) + " at d=" + std::to_string(d));
      }
      for (int k = 1; k <= d; ++k) {
        const double eig = s_k_2_eigen(f, k);
        const double enumerated = s_k_p(f, k, PowerExponent::finite(2.0)).raw_sum;
        o.expect(std::abs(eig - enumerated) <= 1e-9 * std::max(eig, enumerated),
                 "eigen path disagrees with enumeration");
      }
    }
  }
  o.log(worst);
  o.detail = o.pass ? "worst margin " + fmt(worst) : o.detail;
  return o;
}

// 4. p=0 and p=inf chain sweeps over rectangular families
Outcome criterion_endpoints() {
  Outcome o;
  std::mt19937_64 g(0xC0FFEE04);
  double worst = 1.0;
  for (int d = 3; d <= 6; ++d) {
    for (int m = d; m <= d + 3; ++m) {
      for (int rep = 0; rep < 1000; ++rep) {
        const VectorFamily f = gaussian_family(m, d, g);
        for (const auto& p : {PowerExponent::zero(), PowerExponent::infinity()}) {
          const MaclaurinReport r = check_vector_maclaurin(f, p, d);
          for (double mg : r.margins) {
            worst = std::min(worst, mg);
            o.expect(mg >= -1e-10, "endpoint margin " + fmt(mg) + " at (m,d)=(" +
                                       std::to_string(m) + "," + std::to_string(d) + ")");
          }
        }
      }
    }
  }
  o.log(worst);
  o.detail = o.pass ? "worst margin " + fmt(worst) : o.detail;
  return o;
}

// 5. p=1 cases k in {2,3,d} plus the monotone orthogonalization sandwich
Outcome criterion_p1_cases() {
  Outcome o;
  std::mt19937_64 g(0xC0FFEE05);
  const PowerExponent one = PowerExponent::finite(1.0);
  double worst = 1.0;
  for (int d = 3; d <= 7; ++d) {
    for (int rep = 0; rep < 1000; ++rep) {
      const VectorFamily f = gaussian_family(d, d, g);
      std::vector<double> means(static_cast<std::size_t>(d) + 1, 0.0);
      for (int k = 1; k <= d; ++k) means[k] = s_k_p(f, k, one).mean;
      std::vector<int> ks = {2, 3, d};
      for (int k : ks) {
        if (k < 2 || k > d) continue;
        const double margin = means[k - 1] - means[k];
        worst = std::min(worst, margin);
        o.expect(margin >= -1e-10, "p=1 margin " + fmt(margin) + " at (d,k)=(" +
                                       std::to_string(d) + "," + std::to_string(k) + ")");
        try {
          const VectorFamily ortho = monotone_orthogonalize(f, k);
          const double mk = s_k_p(ortho, k, one).mean;
          const double mk1 = s_k_p(ortho, k - 1, one).mean;
          o.expect(mk >= means[k] * (1.0 - 1e-9), "sandwich: M_k decreased");
          o.expect(mk1 <= means[k - 1] * (1.0 + 1e-9), "sandwich: M_{k-1} increased");
        } catch (const std::exception& e) {
          o.fail(std::string("monotone_orthogonalize failed: ") + e.what());
        }
      }
    }
  }
  o.log(worst);
  o.detail = o.pass ? "worst margin " + fmt(worst) : o.detail;
  return o;
}

// 6. Szasz sweep over random PSD matrices
Outcome criterion_szasz() {
  Outcome o;
  std::mt19937_64 g(0xC0FFEE06);
  double worst = 1.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 3 + rep % 6;  // orders 3..8
    const GramMatrix psd = gram(gaussian_family(n, n, g));
    for (int k = 2; k < n; ++k) {
      const SzaszResult r = check_szasz(psd, k);
      o.expect(!r.zero_minor, "unexpected zero minor");
      worst = std::min(worst, r.margin);
      o.expect(r.margin >= -1e-10, "szasz margin " + fmt(r.margin));
    }
  }
  o.log(worst);
  o.detail = o.pass ? "worst margin " + fmt(worst) : o.detail;
  return o;
}

// 7. hat-sum claim and barycentric dual paths
Outcome criterion_claim_barycentric() {
  Outcome o;
  std::mt19937_64 g(0xC0FFEE07);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 1.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int d = 2 + rep % 5;  // dimensions 2..6
    const double margin = check_claim(gaussian_family(d, d, g));
    worst = std::min(worst, margin);
    o.expect(margin >= -1e-10, "claim margin " + fmt(margin));
  }
  o.log(worst);
  for (int rep = 0; rep < 1000; ++rep) {
    const int d = 3 + rep % 4;  // simplex vertex counts 3..6
    const Eigen::MatrixXd verts = gaussian_matrix(d - 1, d, g);
    Eigen::VectorXd w(d);
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
      w(i) = 0.02 + u(g);
      total += w(i);
    }
    w /= total;
    const Eigen::VectorXd point = verts * w;
    try {
      // the wedge-formula branch cross-checks against the solve at rel 1e-8
      const Eigen::VectorXd beta = barycentric_coordinates(verts, point);
      o.expect(std::abs(beta.sum() - 1.0) <= 1e-12, "coordinates do not sum to 1");
      const double err = (verts * beta - point).norm();
      o.expect(err <= 1e-10 * (1.0 + point.norm()), "reconstruction error " + fmt(err));
    } catch (const std::exception& e) {
      o.fail(std::string("barycentric failed: ") + e.what());
    }
  }
  o.detail = o.pass ? "worst claim margin " + fmt(worst) : o.detail;
  return o;
}

// 8. constant-factor chain step, plus the stated range of the constant
Outcome criterion_nonsharp() {
  Outcome o;
  std::mt19937_64 g(0xC0FFEE08);
  double worst = 1.0;
  bool margins_ok = true;
  bool range_ok = true;
  std::string range_detail;
  for (int d = 4; d <= 8; ++d) {
    for (int rep = 0; rep < 1000; ++rep) {
      const VectorFamily f = gaussian_family(d, d, g);
      for (int k = 3; k <= d; ++k) {
        const NonSharpResult r = check_nonsharp(f, k);
        worst = std::min(worst, r.bound + 1e-10 - r.ratio);
        if (r.ratio > r.bound + 1e-10) margins_ok = false;
        // the strict range (1, 2) claimed for the constant over all tested
        // (d, k): the constant evaluates to exactly 1 at k = d, so this
        // clause is arithmetically false at that endpoint; it is checked as
        // stated rather than loosened
        if (!(r.bound > 1.0 && r.bound < 2.0) && range_ok) {
          range_ok = false;
          range_detail = "constant = " + fmt(r.bound) + " at (d,k)=(" +
                         std::to_string(d) + "," + std::to_string(k) +
                         "), outside the strict range (1,2)";
        }
      }
    }
  }
  o.log(worst);
  o.expect(margins_ok, "a ratio exceeded its bound; worst slack " + fmt(worst));
  o.expect(range_ok, std::string(margins_ok
                                     ? "all ratios within bounds (worst slack " +
                                           fmt(worst) + ") but "
                                     : "") +
                         range_detail);
  if (o.pass) o.detail = "worst slack " + fmt(worst);
  return o;
}

// 9. zonotope identities: cube exactness, dual-path projections, constant form
Outcome criterion_zonotope() {
  Outcome o;
  for (int d = 1; d <= 10; ++d) {
    const Zonotope cube(VectorFamily::standard_basis(d));
    for (int k = 0; k <= d; ++k) {
      const double v = intrinsic_volume(cube, k);
      o.log(v);
      o.expect(v == static_cast<double>(binomial(d, k)),
               "cube V_k not exact at d=" + std::to_string(d));
    }
  }
  std::mt19937_64 g(0xC0FFEE09);
  double worst_agree = 0.0;
  double worst_margin = 1.0;
  for (int rep = 0; rep < 500; ++rep) {
    const int d = 3 + rep % 4;  // 3..6
    const int m = d + rep % 3;
    const Zonotope z(gaussian_family(m, d, g));
    Eigen::VectorXd u = gaussian_matrix(d, 1, g);
    u /= u.norm();
    const Zonotope projected = project_generators(z, u);
    for (int k = 0; k <= d - 1; ++k) {
      const double direct = projected_intrinsic_volume(z, u, k);
      const double via = intrinsic_volume(projected, k);
      const double rel = std::abs(direct - via) / std::max({direct, via, 1e-300});
      worst_agree = std::max(worst_agree, rel);
      o.expect(rel <= 1e-9, "dual-path disagreement " + fmt(rel));
    }
    for (int k = 3; k <= d; ++k) {
      const double margin = check_projection_inequality(z, u, k, false).margin;
      worst_margin = std::min(worst_margin, margin);
      o.expect(margin >= -1e-10, "constant-form margin " + fmt(margin));
    }
  }
  o.log(worst_agree);
  o.log(worst_margin);
  if (o.pass) {
    o.detail = "worst dual-path rel " + fmt(worst_agree) + ", worst margin " +
               fmt(worst_margin);
  }
  return o;
}

// 10. negative-p falsification with a replayable witness
Outcome criterion_negative_p(int threads = 1) {
  Outcome o;
  SearchConfig cfg;  // library defaults: m=d=3, k=2, p=-1, 100 restarts
  cfg.seed = 20250810;
  const SearchTarget target = SearchTarget::maclaurin(-1.0, 2);
  const SearchResult res = violation_search(cfg, target, threads);
  o.log(res.best_margin);
  for (double t : res.trace) o.log(t);
  o.expect(res.best_margin < -1e-6, "best margin " + fmt(res.best_margin) + " not < -1e-6");
  const auto replay = evaluate_target_margin(res.witness, target);
  o.expect(replay.has_value(), "witness infeasible on replay");
  if (replay) {
    o.expect(std::abs(*replay - res.best_margin) <= 1e-12,
             "witness replays to " + fmt(*replay) + " != " + fmt(res.best_margin));
  }
  if (!g_cli.empty()) {
    const auto witness_path = (scratch() / "acceptance_witness.family").string();
    write_family_file(witness_path, res.witness, {"acceptance witness"});
    const RunResult r = run_cli("check " + witness_path + " --p -1");
    o.expect(r.status == 1, "cli replay exit " + std::to_string(r.status) + ", expected 1");
  } else {
    o.fail("cli binary path not provided");
  }
  if (o.pass) o.detail = "best margin " + fmt(res.best_margin);
  return o;
}

// 11. determinism: repeated runs and thread counts reproduce every number
Outcome criterion_determinism() {
  Outcome o;

  // the seeded in-process sweeps reproduce their digests exactly
  const std::pair<const char*, std::function<Outcome()>> sweeps[] = {
      {"equality", criterion_equality},
      {"szasz", criterion_szasz},
      {"zonotope", criterion_zonotope},
  };
  for (const auto& [name, fn] : sweeps) {
    const Outcome a = fn();
    const Outcome b = fn();
    o.expect(a.digest == b.digest, std::string("sweep '") + name + "' is not reproducible");
  }

  // the search reproduces bitwise across repeats and thread counts
  const Outcome s1 = criterion_negative_p(1);
  const Outcome s2 = criterion_negative_p(1);
  const Outcome s4 = criterion_negative_p(4);
  o.expect(s1.digest == s2.digest, "search digest changed between runs");
  o.expect(s1.digest == s4.digest, "search digest depends on thread count");

  if (!g_cli.empty()) {
    const RunResult a = run_cli("chain 1 2 3");
    const RunResult b = run_cli("chain 1 2 3");
    json ja = json::parse(a.output, nullptr, false);
    json jb = json::parse(b.output, nullptr, false);
    if (ja.is_discarded() || jb.is_discarded()) {
      o.fail("cli output is not JSON");
    } else {
      ja.erase("wall_time_s");
      jb.erase("wall_time_s");
      o.expect(ja == jb, "cli chain output changed between runs");
    }
    const auto w1 = (scratch() / "det_w1.family").string();
    const auto w2 = (scratch() / "det_w2.family").string();
    const std::string base = "search --seed 31415 --tol 1e-10";
    const RunResult r1 = run_cli(base + " --threads 1 --witness-out " + w1);
    const RunResult r2 = run_cli(base + " --threads 4 --witness-out " + w2);
    json j1 = json::parse(r1.output, nullptr, false);
    json j2 = json::parse(r2.output, nullptr, false);
    if (j1.is_discarded() || j2.is_discarded()) {
      o.fail("cli search output is not JSON");
    } else {
      j1.erase("wall_time_s");
      j1.erase("command");
      j1.erase("witness_file");
      j2.erase("wall_time_s");
      j2.erase("command");
      j2.erase("witness_file");
      o.expect(j1 == j2, "cli search output depends on thread count");
      std::ifstream f1(w1), f2(w2);
      std::stringstream c1, c2;
      c1 << f1.rdbuf();
      c2 << f2.rdbuf();
      o.expect(c1.str() == c2.str(), "witness files differ across thread counts");
    }
  } else {
    o.fail("cli binary path not provided");
  }
  if (o.pass) o.detail = "all digests and reports reproduced";
  return o;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> fn;
  double budget_seconds;  // 0 = unbounded
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];

  const std::vector<Criterion> criteria = {
      {1, "classical anchor (cli chain 1 2 3)", criterion_chain, 1.0},
      {2, "orthonormal equality case, every checker", criterion_equality, 5.0},
      {3, "p=2 chain sweep + eigen/enumeration agreement", criterion_p2, 60.0},
      {4, "p=0 and p=inf chain sweeps", criterion_endpoints, 60.0},
      {5, "p=1 cases k in {2,3,d} + monotone sandwich", criterion_p1_cases, 0.0},
      {6, "Szasz sweep on random PSD matrices", criterion_szasz, 0.0},
      {7, "hat-sum claim + barycentric dual paths", criterion_claim_barycentric, 0.0},
      {8, "constant-factor chain step + constant range", criterion_nonsharp, 0.0},
      {9, "zonotope identities and projections", criterion_zonotope, 0.0},
      {10, "negative-p falsification with replayable witness",
       [] { return criterion_negative_p(1); }, 30.0},
      {11, "determinism across reruns and thread counts", criterion_determinism, 0.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      o.fail("runtime " + fmt(secs) + "s over budget " + fmt(c.budget_seconds) + "s");
    }
    if (!o.pass) ++failures;
    std::printf("%s  criterion %2d  %-52s  (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), secs, o.detail.empty() ? "" : "  -- ",
                o.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
  } else {
    std::printf("all criteria passed\n");
  }
  return failures == 0 ? 0 : 1;
}
