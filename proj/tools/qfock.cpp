// qfock: verification suite, expectation sweeps and state dumps.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qfock/errors.hpp"
#include "qfock/gates.hpp"
#include "qfock/io.hpp"
#include "qfock/ladder.hpp"
#include "qfock/states.hpp"
#include "qfock/verify.hpp"

using namespace qfock;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError(std::string("bad number in ") + what);
    out.push_back(v);
  }
  return out;
}

SliceAxis<double> parse_axis(const std::string& s) {
  if (s == "i") return SliceAxis<double>::i();
  if (s == "j") return SliceAxis<double>::j();
  if (s == "k") return SliceAxis<double>::k();
  const auto v = parse_list(s, "--axis");
  if (v.size() != 3) throw ConfigError("--axis takes i, j, k or x,y,z");
  try {
    return {v[0], v[1], v[2]};
  } catch (const ZeroInputError& e) {
    throw ConfigError(e.what());
  }
}

// "w,x,y,z" with trailing components optional
Quaterniond parse_quat(const std::string& s, const char* what) {
  const auto v = parse_list(s, what);
  if (v.empty() || v.size() > 4) throw ConfigError(std::string(what) + " takes 1 to 4 components");
  double c[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i];
  return {c[0], c[1], c[2], c[3]};
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return out;
}

int threads_from_env() {
  const char* s = std::getenv("QFOCK_THREADS");
  if (!s || !*s) return 1;
  const int n = std::atoi(s);
  if (n < 1) throw ConfigError("QFOCK_THREADS must be a positive integer");
  return n;
}

// Writes to --out, or stdout for "-".
template <typename F>
void emit(const std::string& path, F write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  write(os);
  if (!os) throw std::runtime_error("write failed: " + path);
}

struct Common {
  Index dim{64};
  Index margin{0};  // 0: dim/4
  double tol{0};
  std::string axis{"i"};
  std::string measure{"corrected"};
  std::string out;
};

void add_common(CLI::App* app, Common& c, const std::string& out_default) {
  c.out = out_default;
  app->add_option("--dim", c.dim, "truncation dimension")->capture_default_str();
  app->add_option("--margin", c.margin, "rows excluded from the protected block (default dim/4)");
  app->add_option("--tol", c.tol, "tolerance floor (0 keeps built-in bounds)")
      ->capture_default_str();
  app->add_option("--axis", c.axis, "slice axis: i, j, k or x,y,z")->capture_default_str();
  app->add_option("--measure", c.measure, "paper or corrected")->capture_default_str();
  app->add_option("--out", c.out, "output path")->capture_default_str();
}

Index margin_of(const Common& c) { return c.margin != 0 ? c.margin : std::max<Index>(c.dim / 4, 1); }

int cmd_verify(const Common& c) {
  VerifyConfig cfg;
  cfg.dim = c.dim;
  cfg.margin = margin_of(c);
  cfg.tol = c.tol;
  cfg.axis = parse_axis(c.axis);
  cfg.measure = MeasureSpec{parse_measure(c.measure)};
  cfg.threads = threads_from_env();
  cfg.validate();

  const VerifyResult res = run_verify(cfg);
  write_verify_outputs(res, c.out);
  for (const auto& s : res.sections) {
    std::cout << (s.report.passed() ? "PASS" : "FAIL") << " " << s.criterion << " "
              << s.report.title() << " (" << s.report.checks().size() << " checks, max deviation "
              << format_double(s.report.max_deviation()) << ")\n";
  }
  std::cout << "ledger: " << res.ledger.entries().size() << " entries -> "
            << (std::filesystem::path(c.out) / "ledger.json").string() << "\n";
  const auto fails = res.failures();
  for (const auto& f : fails) std::cout << "failed: " << f << "\n";
  return fails.empty() ? 0 : kExitFail;
}

struct ExpectArgs {
  double r_min{0}, r_max{1};
  int r_steps{5};
  double theta_min{0}, theta_max{90};
  int theta_steps{3};
};

std::string opt_double(double v) { return std::isfinite(v) ? format_double(v) : ""; }

int cmd_expect(const Common& c, const ExpectArgs& e) {
  const SliceAxis<double> axis = parse_axis(c.axis);
  if (c.dim < 4) throw ConfigError("dim must be at least 4");
  if (e.r_steps < 0 || e.theta_steps < 0) throw ConfigError("step counts must be non-negative");
  if (e.r_min < 0 || e.r_max < 0) throw ConfigError("r must be non-negative");
  const auto rs = linspace(e.r_min, e.r_max, e.r_steps);
  const auto ts = linspace(e.theta_min, e.theta_max, e.theta_steps);
  const std::string label = c.axis;

  struct Row {
    std::vector<std::string> fields;
  };
  const int n = static_cast<int>(rs.size() * ts.size());
  const auto rows = parallel_map<Row>(n, threads_from_env(), [&](int idx) {
    const double r = rs[idx / ts.size()];
    const double tdeg = ts[idx % ts.size()];
    const double th = tdeg * std::numbers::pi / 180;
    const Index d = std::max<Index>(4, (recommended_dim(8, r) * c.dim + 63) / 64);
    const LadderSet L = build_ladder(d, axis);
    const SqueezeParams sp = SqueezeParams::polar(r, axis.phase(th));
    const ExpectationReport ex =
        expectations(pure_squeezed(sp, L), L, ProtectedBlock(d, std::clamp<Index>(d / 4, 1, 16)));
    const double s = std::sinh(r), c2 = std::cosh(2 * r), s2 = std::sinh(2 * r);
    const double vx = 0.25 * (c2 + s2 * std::cos(th));
    const double vy = 0.25 * (c2 - s2 * std::cos(th));
    const double q_closed = r > 0 ? 1 + 2 * s * s : std::numeric_limits<double>::quiet_NaN();
    return Row{{format_double(r), format_double(tdeg), label, std::to_string(d),
                format_double(ex.mean_n.real()), format_double(s * s), format_double(ex.var_x),
                format_double(vx), format_double(ex.var_y), format_double(vy),
                format_double(ex.var_x * ex.var_y), format_double(vx * vy),
                opt_double(ex.mandel_q), opt_double(q_closed)}};
  });
  emit(c.out, [&](std::ostream& os) {
    CsvWriter csv(os, {"r", "theta_deg", "axis", "dim", "mean_n", "mean_n_closed", "var_x",
                       "var_x_closed", "var_y", "var_y_closed", "var_product",
                       "var_product_closed", "mandel_q", "mandel_q_closed"});
    for (const auto& r : rows) csv.row(r.fields);
  });
  return 0;
}

struct StateArgs {
  std::string which;
  std::string p{"0"};
  std::string q{"0"};
};

int cmd_state(Common c, const StateArgs& s) {
  const double tail_tol = c.tol > 0 ? c.tol : kTailTol;
  const SliceAxis<double> axis = parse_axis(c.axis);
  const Quaterniond p = parse_quat(s.p, "--p");
  const Quaterniond q = parse_quat(s.q, "--q");
  const double r = s.which == "coherent" ? 0.0 : p.norm();
  if (c.dim == 0) c.dim = recommended_dim(8, r, q.norm());
  if (c.dim < 4) throw ConfigError("dim must be at least 4");
  const Index margin = margin_of(c);
  if (margin <= 0 || margin >= c.dim) throw ConfigError("margin must satisfy 0 < margin < dim");

  FockVectord v(c.dim);
  double tail = 0;
  if (s.which == "coherent") {
    v = coherent(q, c.dim, tail_tol);
    tail = coherent_tail(q.norm(), c.dim);
  } else {
    const LadderSet L = build_ladder(c.dim, axis);
    const SqueezeParams sp(p);
    v = s.which == "pure_squeezed" ? pure_squeezed(sp, L) : squeezed_state(sp, q, L, tail_tol);
    // mass the truncated exponential pushed into the margin
    tail = tail_mass(v, c.dim - margin);
    if (tail > tail_tol)
      throw TailViolation("state mass beyond protected block", tail,
                          static_cast<long>(std::max(2 * c.dim, recommended_dim(8, r, q.norm()))));
  }
  nlohmann::ordered_json j;
  j["state"] = s.which;
  j["norm"] = norm(v);
  j["tail_mass"] = tail;
  const nlohmann::ordered_json body = to_json(v);
  for (const auto& [k, val] : body.items()) j[k] = val;
  emit(c.out, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic squeezed states on a truncated Fock space"};
  app.require_subcommand(1);

  Common vc, ec, sc;
  auto* verify = app.add_subcommand("verify", "run every identity check and write the ledger");
  add_common(verify, vc, "qfock-verify");

  ExpectArgs ea;
  auto* expect = app.add_subcommand("expect", "pure squeezed expectations over an (r, theta) grid");
  add_common(expect, ec, "-");
  expect->add_option("--r-min", ea.r_min)->capture_default_str();
  expect->add_option("--r-max", ea.r_max)->capture_default_str();
  expect->add_option("--r-steps", ea.r_steps)->capture_default_str();
  expect->add_option("--theta-min", ea.theta_min, "degrees")->capture_default_str();
  expect->add_option("--theta-max", ea.theta_max, "degrees")->capture_default_str();
  expect->add_option("--theta-steps", ea.theta_steps)->capture_default_str();

  StateArgs sa;
  auto* state = app.add_subcommand("state", "dump a state in the fock JSON schema");
  add_common(state, sc, "-");
  sc.dim = 0;
  state->get_option("--dim")->description("truncation dimension (default: sized from p and q)");
  state->add_option("which", sa.which, "coherent, pure_squeezed or squeezed")
      ->required()
      ->check(CLI::IsMember({"coherent", "pure_squeezed", "squeezed"}));
  state->add_option("--p", sa.p, "squeeze parameter w,x,y,z")->capture_default_str();
  state->add_option("--q", sa.q, "displacement w,x,y,z")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify) return cmd_verify(vc);
    if (*expect) return cmd_expect(ec, ea);
    if (*state) return cmd_state(sc, sa);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TailViolation& e) {
    std::cerr << "tail violation: " << e.what() << " (tail " << format_double(e.tail())
              << ", try --dim " << e.suggested_dim() << ")\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}
