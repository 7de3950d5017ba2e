#include "equimax/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "equimax/dominance.hpp"
#include "equimax/errors.hpp"
#include "equimax/format.hpp"
#include "equimax/max_distribution.hpp"
#include "equimax/monte_carlo.hpp"
#include "equimax/special_functions.hpp"
#include "equimax/theorem_verifier.hpp"
#include "equimax/trial_design.hpp"

namespace equimax::cli {

namespace {

enum class Format { json, csv, plain };

struct ParamOpts {
  int k = 0;  // 0 = infer from mu
  double rho = 0.0;
  std::string mu_csv;
};

struct QuadOpts {
  int nodes = 256;
  double radius = 9.0;
  double abs_tol = 1e-12;
};

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    const auto e = token.find_last_not_of(" \t");
    if (b == std::string::npos) {
      throw std::invalid_argument(std::string(what) + ": empty entry in list");
    }
    token = token.substr(b, e - b + 1);
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": cannot parse '" + token + "'");
    }
    if (used != token.size()) {
      throw std::invalid_argument(std::string(what) + ": trailing junk in '" + token + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty list");
  }
  return out;
}

EquicorrParams make_params(const ParamOpts& po) {
  EquicorrParams p;
  p.mu = parse_double_list(po.mu_csv, "--mu");
  p.k = (po.k > 0) ? po.k : static_cast<int>(p.mu.size());
  p.rho = po.rho;
  if (po.k > 0 && p.mu.size() != static_cast<std::size_t>(po.k)) {
    throw std::invalid_argument("--mu must hold exactly k entries");
  }
  validate(p);
  return p;
}

QuadratureSpec make_quad(const QuadOpts& qo) {
  QuadratureSpec q;
  q.nodes = qo.nodes;
  q.radius = qo.radius;
  q.abs_tol = qo.abs_tol;
  validate(q);
  return q;
}

std::vector<double> parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = (c1 == std::string::npos) ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument("--grid must look like lo:hi:step");
  }
  const std::vector<double> parts = {
      parse_double_list(text.substr(0, c1), "--grid")[0],
      parse_double_list(text.substr(c1 + 1, c2 - c1 - 1), "--grid")[0],
      parse_double_list(text.substr(c2 + 1), "--grid")[0]};
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(step > 0.0) || hi < lo) {
    throw std::invalid_argument("--grid needs hi >= lo and step > 0");
  }
  std::vector<double> xs;
  const double n_est = (hi - lo) / step;
  if (n_est > 2e6) throw std::invalid_argument("--grid has too many points");
  for (int i = 0;; ++i) {
    const double x = lo + i * step;
    if (x > hi + 1e-9 * std::max(1.0, step)) break;
    xs.push_back(x);
  }
  return xs;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * i / (n - 1);
  }
  return xs;
}

// A rendered value that knows how to print itself in each output format.
struct Cell {
  enum class Kind { number, text, boolean, null } kind = Kind::null;
  double num = 0.0;
  std::string text;
  bool flag = false;

  static Cell number_of(double v) { return {Kind::number, v, {}, false}; }
  static Cell text_of(std::string s) { return {Kind::text, 0.0, std::move(s), false}; }
  static Cell bool_of(bool b) { return {Kind::boolean, 0.0, {}, b}; }
  static Cell null_of() { return {}; }

  std::string json() const {
    switch (kind) {
      case Kind::number: return format_double(num);
      case Kind::text: return "\"" + json_escape(text) + "\"";
      case Kind::boolean: return flag ? "true" : "false";
      case Kind::null: return "null";
    }
    return "null";
  }
  std::string flat() const {
    switch (kind) {
      case Kind::number: return format_double(num);
      case Kind::text: return text;
      case Kind::boolean: return flag ? "true" : "false";
      case Kind::null: return "";
    }
    return "";
  }
};

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<Cell>> rows;
};

void emit_table(const Table& t, Format f, std::ostream& out) {
  switch (f) {
    case Format::json: {
      out << "[";
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out << (r ? ",\n " : "\n ") << "{";
        for (std::size_t c = 0; c < t.headers.size(); ++c) {
          if (c) out << ",";
          out << "\"" << json_escape(t.headers[c]) << "\":" << t.rows[r][c].json();
        }
        out << "}";
      }
      out << "\n]\n";
      break;
    }
    case Format::csv: {
      for (std::size_t c = 0; c < t.headers.size(); ++c) {
        out << (c ? "," : "") << t.headers[c];
      }
      out << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out << (c ? "," : "") << row[c].flat();
        }
        out << "\n";
      }
      break;
    }
    case Format::plain: {
      std::vector<std::size_t> width(t.headers.size());
      for (std::size_t c = 0; c < t.headers.size(); ++c) {
        width[c] = t.headers[c].size();
        for (const auto& row : t.rows) {
          width[c] = std::max(width[c], row[c].flat().size());
        }
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
          out << cells[c];
          if (c + 1 < cells.size()) {
            out << std::string(width[c] - cells[c].size() + 2, ' ');
          }
        }
        out << "\n";
      };
      line(t.headers);
      for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (const auto& cell : row) cells.push_back(cell.flat());
        line(cells);
      }
      break;
    }
  }
}

// Single-object output: a one-row table in csv/plain, one object in json.
void emit_object(const Table& t, Format f, std::ostream& out) {
  if (f != Format::json) {
    emit_table(t, f, out);
    return;
  }
  out << "{";
  for (std::size_t c = 0; c < t.headers.size(); ++c) {
    if (c) out << ",";
    out << "\"" << json_escape(t.headers[c]) << "\":" << t.rows[0][c].json();
  }
  out << "}\n";
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "plain") return Format::plain;
  throw std::invalid_argument("--format must be json, csv or plain");
}

struct Timer {
  bool enabled = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void report(std::ostream& err) const {
    if (!enabled) return;
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    err << "elapsed_ms=" << (us / 1000.0) << "\n";
  }
};

void add_param_opts(CLI::App* cmd, ParamOpts& po) {
  cmd->add_option("--k", po.k, "coordinate count (defaults to the length of --mu)");
  cmd->add_option("--rho", po.rho, "common correlation, strictly inside (0,1)")
      ->required();
  cmd->add_option("--mu", po.mu_csv,
                  "comma-separated means; quote or use --mu=... for negatives")
      ->required();
}

void add_quad_opts(CLI::App* cmd, QuadOpts& qo) {
  cmd->add_option("--nodes", qo.nodes, "quadrature node budget (default 256)");
  cmd->add_option("--radius", qo.radius, "truncation half-width (default 9)");
  cmd->add_option("--abs-tol", qo.abs_tol, "absolute error target (default 1e-12)");
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"distribution of the maximum of an equicorrelated Gaussian vector"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "json";
  bool timings = false;
  app.add_option("--format", format_name, "output format: json, csv or plain")
      ->capture_default_str();
  app.add_flag("--timings", timings, "report wall time on the error stream");

  ParamOpts po;
  QuadOpts qo;
  std::string grid_text;
  double x_point = 0.0;
  bool have_x = false;
  std::string zeta_csv;
  int probes = 500;
  std::uint64_t seed = 1;
  int k_max = 4;
  std::uint64_t n_draws = 1000000;
  double alpha = 0.001;
  double kappa = -1.0;
  std::string zetas_csv = "0.8,0.9,0.95,0.99";
  std::string out_path;
  int n_grid = 100;

  CLI::App* cdf = app.add_subcommand("cdf", "CDF of the maximum over a grid");
  add_param_opts(cdf, po);
  add_quad_opts(cdf, qo);
  cdf->add_option("--grid", grid_text, "evaluation grid lo:hi:step");
  cdf->add_option("--x", x_point, "single evaluation point");

  CLI::App* pdf = app.add_subcommand("pdf", "density of the maximum over a grid");
  add_param_opts(pdf, po);
  add_quad_opts(pdf, qo);
  pdf->add_option("--grid", grid_text, "evaluation grid lo:hi:step");
  pdf->add_option("--x", x_point, "single evaluation point");

  CLI::App* quant = app.add_subcommand("quantile", "quantiles of the maximum");
  add_param_opts(quant, po);
  add_quad_opts(quant, qo);
  quant->add_option("--zeta", zeta_csv, "comma-separated probability levels")->required();

  CLI::App* classify = app.add_subcommand(
      "classify", "dominance relation against the standard normal");
  add_param_opts(classify, po);
  add_quad_opts(classify, qo);

  CLI::App* crossing = app.add_subcommand(
      "crossing", "crossing details: location, density gap, sign changes");
  add_param_opts(crossing, po);
  add_quad_opts(crossing, qo);
  crossing->add_option("--n-grid", n_grid, "points per side for the conditional check");

  CLI::App* verify = app.add_subcommand(
      "verify", "randomized checks of the proof-chain inequalities");
  add_quad_opts(verify, qo);
  verify->add_option("--probes", probes, "number of random probes");
  verify->add_option("--seed", seed, "probe generator seed");
  verify->add_option("--k-max", k_max, "largest coordinate count to draw");

  CLI::App* mc = app.add_subcommand(
      "mc-check", "Monte Carlo cross-validation of the quadrature CDF");
  add_param_opts(mc, po);
  add_quad_opts(mc, qo);
  mc->add_option("--n", n_draws, "draw count");
  mc->add_option("--seed", seed, "generator seed");
  mc->add_option("--alpha", alpha, "DKW band failure probability");
  mc->add_option("--grid", grid_text, "evaluation grid lo:hi:step (default: 50 auto points)");

  CLI::App* coro = app.add_subcommand(
      "corollary", "threshold-shift bound for k treatments vs control");
  add_param_opts(coro, po);
  add_quad_opts(coro, qo);
  coro->add_option("--kappa", kappa, "hypothesis bound (default: calibrated maximum)");
  coro->add_option("--zetas", zetas_csv, "comma-separated target probabilities")
      ->capture_default_str();

  CLI::App* sample = app.add_subcommand("sample", "dump Monte Carlo maxima as CSV");
  add_param_opts(sample, po);
  sample->add_option("--n", n_draws, "draw count");
  sample->add_option("--seed", seed, "generator seed");
  sample->add_option("--out", out_path, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return (code == 0) ? 0 : 1;
  }

  const Format fmt = parse_format(format_name);
  Timer timer;
  timer.enabled = timings;

  if (*cdf || *pdf) {
    const bool want_pdf = static_cast<bool>(*pdf);
    CLI::App* active = want_pdf ? pdf : cdf;
    const EquicorrParams p = make_params(po);
    const QuadratureSpec q = make_quad(qo);
    const bool have_grid = active->count("--grid") > 0;
    have_x = active->count("--x") > 0;
    std::vector<double> xs;
    if (have_grid && have_x) {
      throw std::invalid_argument("give --grid or --x, not both");
    }
    if (have_grid) {
      xs = parse_grid(grid_text);
    } else if (have_x) {
      xs = {x_point};
    } else {
      throw std::invalid_argument("cdf/pdf need --grid or --x");
    }
    Table t;
    t.headers = {"x", want_pdf ? "pdf" : "cdf"};
    for (double x : xs) {
      const double v = want_pdf ? max_pdf(x, p, q) : max_cdf(x, p, q);
      t.rows.push_back({Cell::number_of(x), Cell::number_of(v)});
    }
    emit_table(t, fmt, out);
    timer.report(err);
    return 0;
  }

  if (*quant) {
    const EquicorrParams p = make_params(po);
    const QuadratureSpec q = make_quad(qo);
    Table t;
    t.headers = {"zeta", "x"};
    for (double z : parse_double_list(zeta_csv, "--zeta")) {
      t.rows.push_back({Cell::number_of(z), Cell::number_of(max_quantile(z, p, q))});
    }
    emit_table(t, fmt, out);
    timer.report(err);
    return 0;
  }

  if (*classify) {
    const EquicorrParams p = make_params(po);
    const QuadratureSpec q = make_quad(qo);
    const DominanceVerdict v = find_crossing(p, q);
    Table t;
    t.headers = {"kind", "x0", "pdf_gap"};
    t.rows.push_back({Cell::text_of(to_string(v.kind)),
                      v.x0 ? Cell::number_of(*v.x0) : Cell::null_of(),
                      v.pdf_gap ? Cell::number_of(*v.pdf_gap) : Cell::null_of()});
    emit_object(t, fmt, out);
    timer.report(err);
    return 0;
  }

  if (*crossing) {
    const EquicorrParams p = make_params(po);
    const QuadratureSpec q = make_quad(qo);
    const DominanceVerdict v = find_crossing(p, q);
    const double lo = *std::min_element(p.mu.begin(), p.mu.end()) - 8.0;
    const double hi = 8.0 + std::sqrt(2.0 * std::log(static_cast<double>(p.k)));
    const int changes = count_sign_changes(p, linspace(lo, hi, 1601), q);
    Table t;
    t.headers = {"kind", "x0", "pdf_gap", "sign_changes", "conditional_ok"};
    Cell cond = Cell::null_of();
    if (v.kind == DominanceKind::SINGLE_CROSSING) {
      cond = Cell::bool_of(conditional_dominance_check(p, *v.x0, n_grid, q));
    }
    t.rows.push_back({Cell::text_of(to_string(v.kind)),
                      v.x0 ? Cell::number_of(*v.x0) : Cell::null_of(),
                      v.pdf_gap ? Cell::number_of(*v.pdf_gap) : Cell::null_of(),
                      Cell::number_of(changes), cond});
    emit_object(t, fmt, out);
    timer.report(err);
    return 0;
  }

  if (*verify) {
    if (fmt == Format::csv) {
      throw std::invalid_argument("verify supports --format json or plain");
    }
    SweepSpec spec;
    spec.probes = probes;
    spec.seed = seed;
    spec.k_max = k_max;
    spec.quad = make_quad(qo);
    const std::vector<ProbeReport> reports = sweep_proof_chain(spec);
    std::size_t violations = 0;
    for (const auto& r : reports) {
      if (!r.lower_bound_ok) ++violations;
      if (fmt == Format::json) out << report_to_json_line(r) << "\n";
    }
    if (fmt == Format::json) {
      out << "{\"probes\":" << spec.probes << ",\"reports\":" << reports.size()
          << ",\"violations\":" << violations << "}\n";
    } else {
      out << "probes=" << spec.probes << " reports=" << reports.size()
          << " violations=" << violations << "\n";
    }
    timer.report(err);
    return violations == 0 ? 0 : 3;
  }

  if (*mc) {
    const EquicorrParams p = make_params(po);
    const QuadratureSpec q = make_quad(qo);
    if (n_draws == 0) throw std::invalid_argument("--n must be >= 1");
    std::vector<double> grid;
    if (!grid_text.empty()) {
      grid = parse_grid(grid_text);
    } else {
      grid = linspace(max_quantile(0.001, p, q), max_quantile(0.999, p, q), 50);
    }
    const AgreementReport rep =
        kernel_agreement(p, static_cast<std::size_t>(n_draws), seed, grid, alpha, q);
    Table t;
    t.headers = {"n", "alpha", "epsilon", "worst_gap", "worst_x", "pass"};
    t.rows.push_back({Cell::number_of(static_cast<double>(n_draws)),
                      Cell::number_of(alpha), Cell::number_of(rep.epsilon),
                      Cell::number_of(rep.worst_gap), Cell::number_of(rep.worst_x),
                      Cell::bool_of(rep.pass)});
    emit_object(t, fmt, out);
    timer.report(err);
    return rep.pass ? 0 : 2;
  }

  if (*coro) {
    const EquicorrParams p = make_params(po);
    const QuadratureSpec q = make_quad(qo);
    const double kap = coro->count("--kappa") ? kappa : calibrate_kappa(p, q);
    const std::vector<double> zetas = parse_double_list(zetas_csv, "--zetas");
    const std::vector<SweepEntry> entries = zeta_sweep(p, kap, zetas, q);
    if (fmt == Format::csv) {
      std::ostringstream csv;
      write_corollary_csv(entries, csv);
      out << csv.str();
      for (const auto& e : entries) {
        if (!e.result) err << "zeta=" << format_double(e.zeta) << ": " << e.error << "\n";
      }
    } else {
      Table t;
      t.headers = {"zeta", "kappa", "shift", "attained", "margin", "error"};
      for (const auto& e : entries) {
        if (e.result) {
          t.rows.push_back({Cell::number_of(e.result->zeta),
                            Cell::number_of(e.result->kappa),
                            Cell::number_of(e.result->shift),
                            Cell::number_of(e.result->attained),
                            Cell::number_of(e.result->margin), Cell::null_of()});
        } else {
          t.rows.push_back({Cell::number_of(e.zeta), Cell::null_of(), Cell::null_of(),
                            Cell::null_of(), Cell::null_of(), Cell::text_of(e.error)});
        }
      }
      emit_table(t, fmt, out);
    }
    timer.report(err);
    return 0;
  }

  if (*sample) {
    const EquicorrParams p = make_params(po);
    if (n_draws == 0) throw std::invalid_argument("--n must be >= 1");
    const McSample s = sample_maxima(p, static_cast<std::size_t>(n_draws), seed);
    if (out_path.empty()) {
      write_sample_csv(s, out);
    } else {
      std::ofstream f(out_path);
      if (!f) throw std::invalid_argument("cannot open --out path " + out_path);
      write_sample_csv(s, f);
    }
    timer.report(err);
    return 0;
  }

  throw std::invalid_argument("no subcommand selected");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(argc, argv, out, err);
  } catch (const falsification_error& e) {
    err << "falsified: " << e.what() << "\n";
    return 3;
  } catch (const quadrature_error& e) {
    err << "numerical: " << e.what() << "\n";
    return 2;
  } catch (const integrity_error& e) {
    err << "numerical: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace equimax::cli
