#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "wightman/serialization.hpp"
#include "wightman/verify.hpp"

// Command-line front end: state ingestion, chi tables, correlator computation
// through the perturbative and diagrammatic routes (optionally checked
// against the exact oracle), diagram export, and the verification suites.
//
// Exit codes: 0 success, 2 usage / malformed input, 3 truncation failure,
// 4 quadrature non-convergence, 5 verification failure.

namespace {

using namespace wightman;

struct PhysicsFlags {
  double omega = 1.0;
  double hbar = 1.0;
  double lambda_rel = 0.0;  // lambda in units of omega^3/hbar
  double t0 = 0.0;

  PhysicalParams params() const {
    PhysicalParams p;
    p.omega = omega;
    p.hbar = hbar;
    p.lambda = lambda_rel * omega * omega * omega / hbar;
    p.t0 = t0;
    return p;
  }
};

void add_physics_flags(CLI::App* cmd, PhysicsFlags& ph) {
  cmd->add_option("--omega", ph.omega, "oscillator angular frequency")->capture_default_str();
  cmd->add_option("--hbar", ph.hbar, "action scale")->capture_default_str();
  cmd->add_option("--lambda-rel", ph.lambda_rel, "coupling in units of omega^3/hbar")
      ->capture_default_str();
  cmd->add_option("--t0", ph.t0, "interaction switch-on time")->capture_default_str();
}

StateSpec load_state(const std::string& spec) {
  std::string text = spec;
  if (!spec.empty() && spec.front() != '{') {
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open state file: " + spec);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed state JSON: ") + e.what());
  }
  StateSpec s = state_from_json(j);
  s.validate();
  return s;
}

// chi table for any state: closed forms where the paper gives them, the
// series-log transform otherwise, or the numeric oracle route on request.
ChiTable chi_for_state(const StateSpec& s, int order, const PhysicalParams& p, bool use_oracle,
                       std::string* route = nullptr) {
  if (use_oracle || s.kind == StateSpec::Kind::CustomDensity) {
    if (route) *route = "oracle";
    return fock::chi_numeric(s, order, p);
  }
  if (has_closed_chi(s)) {
    if (route) *route = "closed-form";
  } else if (route) {
    *route = "transform";
  }
  return chi_table(s, order, p);
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::invalid_argument("cannot open output file: " + out);
  f << text;
}

std::string table_csv(const ChiTable& t) {
  std::ostringstream os;
  os << "m,n,re,im\n";
  os.precision(16);
  for (int m = 0; m <= t.max_order(); ++m)
    for (int n = 0; m + n <= t.max_order(); ++n) {
      const Complex v = t.at(m, n);
      os << m << ',' << n << ',' << v.real() << ',' << v.imag() << '\n';
    }
  return os.str();
}

int cmd_chi(const std::string& state_spec, int max_order, bool use_oracle, const PhysicsFlags& ph,
            const std::string& format, const std::string& out) {
  const StateSpec state = load_state(state_spec);
  const PhysicalParams p = ph.params();
  std::string route;
  const ChiTable chi = chi_for_state(state, max_order, p, use_oracle, &route);
  if (format == "csv") {
    write_output(out, table_csv(chi));
  } else {
    Json j = table_to_json(chi);
    j["route"] = route;
    write_output(out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_correlator(const std::string& state_spec, std::vector<double> times, int order,
                   bool compare_oracle, const PhysicsFlags& ph, const QuadratureSpec& quad,
                   const std::string& format, const std::string& out) {
  if (times.empty()) throw std::invalid_argument("correlator needs --times");
  const StateSpec state = load_state(state_spec);
  const PhysicalParams p = ph.params();
  const int n = static_cast<int>(times.size());
  const ChiTable chi = chi_for_state(state, n + 4 * order, p, false);

  const auto pert = correlator_perturbative(chi, times, p, order, quad);
  const Complex diagrammatic = diag::correlator_diagrammatic(chi, times, p, order, quad);
  const Complex free_value = pert.by_order[0];

  Json j{{"times", times},
         {"order", order},
         {"free", to_json(free_value)},
         {"perturbative", to_json(pert.total)},
         {"diagrammatic", to_json(diagrammatic)}};
  Complex oracle{};
  if (compare_oracle) {
    oracle = fock::wightman_exact_anharmonic(state, times, p);
    const double delta = std::abs(oracle - pert.total);
    j["oracle"] = to_json(oracle);
    j["delta_abs"] = delta;
    j["delta_rel"] = delta / std::max(1.0, std::abs(oracle));
  }
  if (format == "csv") {
    std::ostringstream os;
    os.precision(16);
    os << "quantity,re,im\n";
    os << "free," << free_value.real() << ',' << free_value.imag() << '\n';
    os << "perturbative," << pert.total.real() << ',' << pert.total.imag() << '\n';
    os << "diagrammatic," << diagrammatic.real() << ',' << diagrammatic.imag() << '\n';
    if (compare_oracle) os << "oracle," << oracle.real() << ',' << oracle.imag() << '\n';
    write_output(out, os.str());
  } else {
    write_output(out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_diagrams(int n, int order, const std::string& state_spec, const std::string& emit,
                 const PhysicsFlags& ph, std::vector<double> times, const QuadratureSpec& quad,
                 const std::string& out_dir) {
  const PhysicalParams p = ph.params();
  std::optional<ChiTable> chi;
  if (!state_spec.empty()) {
    const StateSpec state = load_state(state_spec);
    chi = chi_for_state(state, n + 4 * order, p, false);
    if (times.empty())
      for (int j = 0; j < n; ++j) times.push_back(1.0 + 0.25 * j);
    if (static_cast<int>(times.size()) != n)
      throw std::invalid_argument("--times length must equal --n");
  }
  std::filesystem::create_directories(out_dir);
  int count = 0;
  for (int k = 0; k <= order; ++k) {
    for (const auto& d : diag::enumerate_diagrams(n, k)) {
      std::ostringstream base;
      base << out_dir << "/diagram_" << std::setw(4) << std::setfill('0') << count;
      if (emit == "dot") {
        std::ofstream f(base.str() + ".dot");
        f << diag::to_dot(d, "d" + std::to_string(count));
      } else {
        Json j = diag::to_json(d);
        j["symmetry_factor"] = diag::symmetry_factor(d);
        Json assignments = Json::array();
        for (const auto& a : diag::label_assignments(d)) {
          Json labels = Json::array();
          for (const auto& l : a) labels.push_back(l.str());
          const auto sw = diag::step_weight(d, a);
          Json thetas = Json::array();
          for (const auto& [hi, lo] : sw.thetas) thetas.push_back(Json::array({hi, lo}));
          Json entry{{"labels", std::move(labels)}, {"weight_zero", sw.zero}, {"thetas", std::move(thetas)}};
          if (chi && !sw.zero)
            entry["value"] = to_json(diag::evaluate_assignment(d, a, *chi, times, p, quad));
          assignments.push_back(std::move(entry));
        }
        j["assignments"] = std::move(assignments);
        if (chi) j["value"] = to_json(diag::evaluate_diagram(d, *chi, times, p, quad));
        std::ofstream f(base.str() + ".json");
        f << j.dump(2) << "\n";
      }
      ++count;
    }
  }
  std::cout << "wrote " << count << " diagrams to " << out_dir << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  const auto results = verify::run_suite(suite, seed);
  for (const auto& r : results)
    std::printf("criterion %d [%s]: %s  (%.2fs)  %s\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds, r.detail.c_str());
  return verify::all_pass(results) ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wightman correlators of the (an)harmonic oscillator in general states"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (env WIGHTMAN_THREADS as fallback)");

  // chi
  auto* chi_cmd = app.add_subcommand("chi", "print the cumulant coefficient table of a state");
  std::string chi_state, chi_format = "json", chi_out;
  int chi_order = 4;
  bool chi_oracle = false;
  PhysicsFlags chi_ph;
  chi_cmd->add_option("--state", chi_state, "state JSON (inline or file path)")->required();
  chi_cmd->add_option("--max-order", chi_order, "largest m+n")->capture_default_str();
  chi_cmd->add_flag("--use-oracle", chi_oracle, "force the numeric fock-space route");
  chi_cmd->add_option("--format", chi_format, "json|csv")->capture_default_str();
  chi_cmd->add_option("--out", chi_out, "output file (stdout if empty)");
  add_physics_flags(chi_cmd, chi_ph);

  // correlator
  auto* cor_cmd = app.add_subcommand("correlator", "compute an n-point Wightman correlator");
  std::string cor_state, cor_format = "json", cor_out;
  std::vector<double> cor_times;
  int cor_order = 0;
  bool cor_oracle = false;
  PhysicsFlags cor_ph;
  QuadratureSpec cor_quad;
  cor_cmd->add_option("--state", cor_state, "state JSON (inline or file path)")->required();
  cor_cmd->add_option("--times", cor_times, "external times t_1..t_n")->required()->delimiter(',');
  cor_cmd->add_option("--order", cor_order, "perturbative order K <= 2")->capture_default_str();
  cor_cmd->add_flag("--compare-oracle", cor_oracle, "also compute the exact fock-space value");
  cor_cmd->add_option("--format", cor_format, "json|csv")->capture_default_str();
  cor_cmd->add_option("--out", cor_out, "output file (stdout if empty)");
  cor_cmd->add_option("--quad-nodes", cor_quad.base_nodes, "base Gauss-Legendre nodes")
      ->capture_default_str();
  cor_cmd->add_option("--quad-tol", cor_quad.tol, "quadrature doubling tolerance")->capture_default_str();
  add_physics_flags(cor_cmd, cor_ph);

  // diagrams
  auto* dia_cmd = app.add_subcommand("diagrams", "enumerate and export diagrams");
  std::string dia_state, dia_emit = "json", dia_out = "diagrams_out";
  std::vector<double> dia_times;
  int dia_n = 2, dia_order = 1;
  PhysicsFlags dia_ph;
  QuadratureSpec dia_quad;
  dia_cmd->add_option("--n", dia_n, "number of external points")->capture_default_str();
  dia_cmd->add_option("--order", dia_order, "max vertex count K <= 2")->capture_default_str();
  dia_cmd->add_option("--state", dia_state, "optional state JSON for evaluation");
  dia_cmd->add_option("--times", dia_times, "external times for evaluation")->delimiter(',');
  dia_cmd->add_option("--emit", dia_emit, "dot|json")->capture_default_str();
  dia_cmd->add_option("--out", dia_out, "output directory")->capture_default_str();
  add_physics_flags(dia_cmd, dia_ph);

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "run an acceptance suite");
  std::string ver_suite = "all";
  std::uint64_t ver_seed = 20240817ull;
  ver_cmd->add_option("suite", ver_suite, "transforms|free|perturbation|diagrams|all")
      ->capture_default_str();
  ver_cmd->add_option("--seed", ver_seed, "seed for the randomized suites")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (threads > 0) set_thread_limit(threads);

  try {
    if (*chi_cmd) return cmd_chi(chi_state, chi_order, chi_oracle, chi_ph, chi_format, chi_out);
    if (*cor_cmd)
      return cmd_correlator(cor_state, cor_times, cor_order, cor_oracle, cor_ph, cor_quad, cor_format,
                            cor_out);
    if (*dia_cmd)
      return cmd_diagrams(dia_n, dia_order, dia_state, dia_emit, dia_ph, dia_times, dia_quad, dia_out);
    if (*ver_cmd) return cmd_verify(ver_suite, ver_seed);
  } catch (const truncation_error& e) {
    std::cerr << "truncation error: " << e.what() << "\n";
    return 3;
  } catch (const convergence_error& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
