// gmf: generalized matrix functions, decomposition checks and the permanent
// dominance criteria from the command line. Reports are JSON on stdout, or in
// the file given by --report; diagnostics go to stderr.

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmf/characters.hpp"
#include "gmf/conjecture.hpp"
#include "gmf/decomposition.hpp"
#include "gmf/error.hpp"
#include "gmf/gmf.hpp"
#include "gmf/json_io.hpp"
#include "gmf/kernels.hpp"
#include "gmf/random.hpp"

namespace {

using gmf::io::Json;

struct RunConfig {
  double tol = 1e-9;
  double psd_tol = gmf::kDefaultPsdTol;
  std::uint64_t cap = gmf::kDefaultEnumerationCap;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string report;
};

void emit(const RunConfig& cfg, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.report.empty()) {
    std::cout << text;
  } else {
    gmf::io::write_text_file(cfg.report, text);
    std::cerr << "report written to " << cfg.report << "\n";
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

gmf::ComplexMatrix load_matrix(const std::string& path) { return gmf::io::matrix_from_json(gmf::io::read_json_file(path)); }

gmf::ConjectureOptions conjecture_options(const RunConfig& cfg, const std::string& id) {
  gmf::ConjectureOptions o;
  o.tol = cfg.tol;
  o.psd_tol = cfg.psd_tol;
  o.matrix_id = id;
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized matrix functions and the permanent dominance conjecture"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "comparison tolerance")->envname("GMF_TOL")->check(CLI::PositiveNumber);
  app.add_option("--psd-tol", cfg.psd_tol, "relative PSD / Cholesky pivot tolerance")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "maximum number of sequences to enumerate")->envname("GMF_CAP");
  app.add_option("--seed", cfg.seed, "seed for random matrices");
  app.add_option("--threads", cfg.threads, "OpenMP threads (0 = all cores)")->envname("GMF_THREADS");
  app.add_option("--report", cfg.report, "write the JSON report to this file instead of stdout");

  std::string matrix_path;
  std::string group_arg = "";
  std::string character_arg = "principal";

  auto* eval = app.add_subcommand("eval", "evaluate d^G_chi(A)");
  bool normalized_only = false;
  eval->add_option("--matrix", matrix_path)->required();
  eval->add_option("--group", group_arg, "group JSON file or name such as S_4")->required();
  eval->add_option("--character", character_arg, "principal, sign, irr:k, partition:[..] or a JSON file");
  eval->add_flag("--normalized", normalized_only, "report the normalized value as the result");

  auto* decompose = app.add_subcommand("decompose", "check the Cholesky decomposition identity");
  bool linear = false;
  bool serial = false;
  bool randomized = false;
  decompose->add_option("--matrix", matrix_path)->required();
  decompose->add_option("--group", group_arg)->required();
  decompose->add_option("--character", character_arg);
  decompose->add_flag("--linear", linear, "use the per-orbit formula for linear characters");
  decompose->add_flag("--serial", serial, "use the serial reference kernels");
  decompose->add_flag("--random-cosets", randomized, "draw coset representatives at random (seeded)");

  auto* cb = app.add_subcommand("cauchy-binet", "residual of the Cauchy-Binet expansion");
  std::string a_path;
  std::string b_path;
  std::string alpha_arg;
  std::string beta_arg;
  cb->add_option("--a", a_path)->required();
  cb->add_option("--b", b_path)->required();
  cb->add_option("--group", group_arg)->required();
  cb->add_option("--character", character_arg);
  cb->add_option("--alpha", alpha_arg, "1-based sequence, e.g. 1,2,3")->required();
  cb->add_option("--beta", beta_arg)->required();

  auto* criterion = app.add_subcommand("criterion", "entry-size criterion on the Cholesky factor");
  criterion->add_option("--matrix", matrix_path)->required();

  auto* quick = app.add_subcommand("quick-affirm", "structural classifiers");
  quick->add_option("--matrix", matrix_path)->required();

  auto* generate = app.add_subcommand("generate-class", "member L diag(1, l_2^2, ..., l_n^2) L^*");
  std::string lambdas_arg;
  std::string out_path;
  generate->add_option("--matrix", matrix_path)->required();
  generate->add_option("--lambdas", lambdas_arg, "n - 1 comma separated values in (0, a]")->required();
  generate->add_option("--out", out_path, "write the member matrix here (default stdout)");

  auto* verify = app.add_subcommand("verify", "per(A) - normalized d^G_chi(A) for every irreducible chi");
  std::string groups_arg = "all";
  verify->add_option("--matrix", matrix_path)->required();
  verify->add_option("--groups", groups_arg, "comma separated names, or 'all' for every subgroup (n <= 5)");

  auto* chartable = app.add_subcommand("chartable", "character table of a group");
  chartable->add_option("--group", group_arg)->required();

  auto* mn = app.add_subcommand("mn", "the orbit bound M_n");
  int mn_n = 4;
  mn->add_option("--n", mn_n)->required();

  auto* rpsd = app.add_subcommand("random-psd", "seeded random PSD matrix");
  int rpsd_n = 4;
  std::string mode_arg = "generic";
  rpsd->add_option("--n", rpsd_n)->required()->check(CLI::Range(1, 12));
  rpsd->add_option("--mode", mode_arg)->check(CLI::IsMember({"generic", "rank1", "rank1diag", "nonneg", "zerocol"}));

  auto* bench = app.add_subcommand("bench-permanent", "Ryser permanent timings");
  int n_min = 8;
  int n_max = 20;
  int reps = 3;
  bench->add_option("--n-min", n_min)->check(CLI::Range(1, 24));
  bench->add_option("--n-max", n_max)->check(CLI::Range(1, 24));
  bench->add_option("--reps", reps)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cfg.threads > 0) gmf::kernels::omp::set_thread_count(cfg.threads);

    if (*eval) {
      const auto a = load_matrix(matrix_path);
      const auto group = gmf::io::group_from_arg(group_arg);
      const auto chi = gmf::io::character_from_arg(character_arg, group);
      const auto v = gmf::gmf(a, chi);
      auto j = gmf::io::to_json(v);
      j["group"] = group->name();
      j["character"] = chi.label();
      j["result"] = gmf::io::complex_to_json(normalized_only ? v.normalized : v.value);
      emit(cfg, j);
      return 0;
    }

    if (*decompose) {
      const auto a = load_matrix(matrix_path);
      const auto group = gmf::io::group_from_arg(group_arg);
      const auto chi = gmf::io::character_from_arg(character_arg, group);
      gmf::DecomposeOptions opts;
      opts.psd_tol = cfg.psd_tol;
      opts.cap = cfg.cap;
      opts.seed = cfg.seed;
      opts.parallel = !serial;
      opts.coset_choice = randomized ? gmf::kernels::CosetChoice::Randomized : gmf::kernels::CosetChoice::Lexicographic;
      const auto r = linear ? gmf::decompose_linear(a, chi, opts) : gmf::decompose(a, chi, opts);
      auto j = gmf::io::to_json(r);
      const bool holds = r.relative_identity_residual <= 1e-8;
      j["identity_holds"] = holds;
      std::cerr << "relative identity residual " << r.relative_identity_residual << "\n";
      emit(cfg, j);
      return holds ? 0 : 2;
    }

    if (*cb) {
      const auto a = load_matrix(a_path);
      const auto b = load_matrix(b_path);
      const auto group = gmf::io::group_from_arg(group_arg);
      const auto chi = gmf::io::character_from_arg(character_arg, group);
      const int size = static_cast<int>(a.rows());
      const auto alpha = gmf::IndexSequence::parse(alpha_arg, size);
      const auto beta = gmf::IndexSequence::parse(beta_arg, size);
      const double residual = gmf::cauchy_binet_check(a, b, chi, alpha, beta, cfg.cap);
      emit(cfg, Json{{"group", group->name()},
                     {"character", chi.label()},
                     {"alpha", alpha.to_string()},
                     {"beta", beta.to_string()},
                     {"relative_residual", residual},
                     {"passed", residual <= 1e-8}});
      return residual <= 1e-8 ? 0 : 2;
    }

    if (*criterion) {
      const auto r = gmf::criterion_check(load_matrix(matrix_path), conjecture_options(cfg, matrix_path));
      std::cerr << "verdict " << gmf::to_string(r.verdict) << "\n";
      emit(cfg, gmf::io::to_json(r));
      return gmf::exit_code(r.verdict);
    }

    if (*quick) {
      const auto r = gmf::quick_affirm(load_matrix(matrix_path), conjecture_options(cfg, matrix_path));
      std::cerr << "verdict " << gmf::to_string(r.verdict) << (r.proposition.empty() ? "" : " (" + r.proposition + ")") << "\n";
      emit(cfg, gmf::io::to_json(r));
      return gmf::exit_code(r.verdict);
    }

    if (*generate) {
      const auto a = load_matrix(matrix_path);
      std::vector<double> lambdas;
      for (const auto& s : split(lambdas_arg, ',')) {
        try {
          lambdas.push_back(std::stod(s));
        } catch (const std::exception&) {
          throw gmf::Error(gmf::ErrorCode::ParseError, "bad lambda '" + s + "'");
        }
      }
      const double bound = gmf::class_bound(a, cfg.psd_tol);
      const auto member = gmf::generate_class(a, lambdas, cfg.psd_tol);
      const auto check = gmf::criterion_check(member, conjecture_options(cfg, out_path.empty() ? "member" : out_path));
      const std::string text = gmf::io::matrix_to_text(member);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        gmf::io::write_text_file(out_path, text);
      }
      std::cerr << "class bound a = " << bound << ", member verdict " << gmf::to_string(check.verdict) << "\n";
      // stdout already holds the member when --out is absent
      if (!out_path.empty() || !cfg.report.empty()) {
        Json j{{"class_bound", std::isfinite(bound) ? Json(bound) : Json(nullptr)},
               {"lambdas", lambdas},
               {"member", out_path.empty() ? Json(nullptr) : Json(out_path)},
               {"member_check", gmf::io::to_json(check)}};
        if (out_path.empty()) {
          gmf::io::write_text_file(cfg.report, j.dump(2) + "\n");
        } else {
          emit(cfg, j);
        }
      }
      return gmf::exit_code(check.verdict);
    }

    if (*verify) {
      const auto a = load_matrix(matrix_path);
      const int n = static_cast<int>(a.rows());
      std::vector<gmf::GroupPtr> groups;
      if (groups_arg == "all") {
        for (auto& g : gmf::all_subgroups(n)) groups.push_back(std::make_shared<const gmf::PermGroup>(std::move(g)));
      } else {
        for (const auto& name : split(groups_arg, ',')) groups.push_back(gmf::io::group_from_arg(name));
      }
      const auto r = gmf::verify_conjecture_numeric(a, groups, conjecture_options(cfg, matrix_path));
      std::cerr << "verdict " << gmf::to_string(r.verdict) << ", min margin " << r.min_margin << "\n";
      if (r.verdict == gmf::Verdict::PotentialCounterexample) {
        std::cerr << "POTENTIAL COUNTEREXAMPLE; matrix follows\n" << gmf::io::matrix_to_text(a);
      }
      emit(cfg, gmf::io::to_json(r));
      return gmf::exit_code(r.verdict);
    }

    if (*chartable) {
      const auto group = gmf::io::group_from_arg(group_arg);
      emit(cfg, gmf::io::to_json(gmf::character_table(group)));
      return 0;
    }

    if (*mn) {
      const auto value = gmf::m_n(mn_n);
      Json j{{"n", mn_n}};
      if (value <= std::numeric_limits<std::int64_t>::max()) {
        j["m_n"] = value.convert_to<std::int64_t>();
      } else {
        j["m_n"] = value.str();
      }
      emit(cfg, j);
      return 0;
    }

    if (*rpsd) {
      gmf::Rng rng(cfg.seed);
      const auto a = gmf::random_psd(rpsd_n, rng, gmf::parse_psd_mode(mode_arg));
      const std::string text = gmf::io::matrix_to_text(a);
      if (cfg.report.empty()) {
        std::cout << text;
      } else {
        gmf::io::write_text_file(cfg.report, text);
      }
      return 0;
    }

    if (*bench) {
      if (n_min > n_max) throw gmf::Error(gmf::ErrorCode::ParseError, "--n-min exceeds --n-max");
      gmf::Rng rng(cfg.seed);
      Json oracle = Json::array();
      for (int n = 1; n <= 7; ++n) {
        const auto m = gmf::random_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
        const auto fast = gmf::permanent_ryser(m);
        const auto slow = gmf::permanent_naive(m);
        const double rel = std::abs(fast - slow) / std::max(1.0, std::abs(slow));
        oracle.push_back(Json{{"n", n}, {"relative_difference", rel}, {"agrees", rel <= 1e-9}});
      }
      Json rows = Json::array();
      for (int n = n_min; n <= n_max; ++n) {
        const auto m = gmf::random_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
        double serial_best = std::numeric_limits<double>::infinity();
        double omp_best = std::numeric_limits<double>::infinity();
        gmf::Complex s_val;
        gmf::Complex p_val;
        for (int r = 0; r < reps; ++r) {
          auto t0 = std::chrono::steady_clock::now();
          s_val = gmf::kernels::serial::permanent_ryser(m);
          serial_best = std::min(serial_best, seconds_since(t0));
          t0 = std::chrono::steady_clock::now();
          p_val = gmf::kernels::omp::permanent_ryser(m);
          omp_best = std::min(omp_best, seconds_since(t0));
        }
        const double rel = std::abs(s_val - p_val) / std::max(1.0, std::abs(s_val));
        rows.push_back(Json{{"n", n},
                            {"serial_seconds", serial_best},
                            {"parallel_seconds", omp_best},
                            {"threads", gmf::kernels::omp::thread_count()},
                            {"serial_parallel_relative_difference", rel}});
        std::cerr << "n=" << n << " serial " << serial_best << "s parallel " << omp_best << "s\n";
      }
      emit(cfg, Json{{"reps", reps}, {"oracle", oracle}, {"timings", rows}});
      return 0;
    }
  } catch (const gmf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
