// qmd: command-line front end. Exit codes: 0 pass, 1 domain failure, 2 usage or I/O.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qmd/catalog.hpp"
#include "qmd/fixtures.hpp"
#include "qmd/flatten.hpp"
#include "qmd/graph_lagrangian.hpp"
#include "qmd/io.hpp"
#include "qmd/kernels.hpp"
#include "qmd/maslov.hpp"
#include "qmd/morse.hpp"
#include "qmd/spectral.hpp"

namespace {

using qmd::io::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const json& j, const std::string& out) {
  if (out.empty()) std::cout << qmd::io::dump(j);
  else qmd::io::write_file(out, j);
}

// 10 h^2 times the largest stencil gradient (at least 1), h the coarsest spacing.
double default_grad_tol(const qmd::ScalarField& f) {
  const double h = *std::max_element(f.spacing.begin(), f.spacing.end());
  double gmax = 1.0;
  for (double g : qmd::kernels::parallel::gradient_norms(f))
    if (!std::isnan(g)) gmax = std::max(gmax, g);
  return 10.0 * h * h * gmax;
}

std::vector<std::size_t> parse_axes(const std::string& s) {
  std::vector<std::size_t> axes;
  if (s.empty() || s == "none") return axes;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      axes.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("--chart: bad axis list '" + s + "'");
    }
  }
  return axes;
}

struct AnalyzeArgs {
  std::string field, tau, chart = "all", check = "auto", out;
  std::vector<double> base;
  std::optional<double> grad_tol, eig_tol, value_tol;
};

int run_analyze(const AnalyzeArgs& a) {
  const qmd::ScalarField f = qmd::io::field_from_json(qmd::io::read_file(a.field));
  qmd::Tolerances t;
  t.grad_tol = a.grad_tol ? *a.grad_tol : default_grad_tol(f);
  if (a.eig_tol) t.eig_tol = *a.eig_tol;
  if (a.value_tol) t.value_tol = *a.value_tol;
  qmd::SubmanifoldChart s = a.chart == "all" ? qmd::SubmanifoldChart::full(f.rank())
                                             : qmd::SubmanifoldChart{parse_axes(a.chart), a.base};
  if (s.base.empty()) s.base.assign(f.rank(), 0.0);

  std::string check = a.check;
  if (check == "auto") check = a.tau.empty() ? "minimally_degenerate" : "qmd";
  if (check == "qmd" && a.tau.empty()) throw UsageError("--check qmd needs --tau");

  qmd::CriticalSet c;
  try {
    c = qmd::detect_critical_set(f, t.grad_tol);
  } catch (const qmd::NoCriticalPointsError& e) {
    std::cout << qmd::io::dump({{"check", check}, {"passed", false}, {"error", e.what()}});
    return kFail;
  }
  qmd::DegeneracyReport r;
  try {
    if (check == "qmd") {
      const qmd::ScalarField tau = qmd::io::field_from_json(qmd::io::read_file(a.tau));
      if (!tau.same_grid(f)) throw UsageError("--tau lives on a different grid");
      r = qmd::check_qmd(f, tau, c, s, t);
    } else if (check == "minimally_degenerate") {
      r = qmd::check_minimally_degenerate(f, c, s, t);
    } else if (check == "flattened") {
      r = qmd::check_flattened_degenerate(f, c, s, t);
    } else {
      if (c.size() != 1) throw qmd::PreconditionError("classify needs a single critical component");
      r = qmd::classify(f, c, t);
    }
  } catch (const qmd::ChartError& e) {
    std::cout << qmd::io::dump({{"check", check}, {"passed", false}, {"error", e.what()}});
    return kFail;
  } catch (const qmd::PreconditionError& e) {
    std::cout << qmd::io::dump({{"check", check}, {"passed", false}, {"error", e.what()}});
    return kFail;
  }
  json j;
  j["check"] = check;
  j["grad_tol"] = t.grad_tol;
  j["chart"] = qmd::io::to_json(s);
  j["critical_components"] = c.size();
  j["report"] = qmd::io::to_json(r);
  emit(j, a.out);
  return r.passed ? kPass : kFail;
}

struct FlattenArgs {
  std::string field, out, field_out;
  double delta = 0.0;
  std::optional<double> grad_tol;
};

int run_flatten(const FlattenArgs& a) {
  if (!(a.delta > 0.0)) throw UsageError("--delta must be positive");
  const qmd::ScalarField f = qmd::io::field_from_json(qmd::io::read_file(a.field));
  const double gt = a.grad_tol ? *a.grad_tol : default_grad_tol(f);
  qmd::CriticalSet c;
  qmd::FlattenResult fr;
  qmd::ThickeningReport th;
  try {
    c = qmd::detect_critical_set(f, gt);
    qmd::FlattenOptions opt;
    opt.tols.grad_tol = gt;
    fr = qmd::flatten(f, a.delta, c, opt);
    th = qmd::verify_thickening(f, c, fr.sigma, fr.box);
  } catch (const std::runtime_error& e) {
    // No critical points, no regular level, or a descent path escaping the box.
    std::cout << qmd::io::dump({{"passed", false}, {"error", e.what()}});
    return kFail;
  } catch (const qmd::PreconditionError& e) {
    std::cout << qmd::io::dump({{"passed", false}, {"error", e.what()}});
    return kFail;
  }
  if (!a.out.empty()) qmd::io::write_file(a.out, qmd::io::to_json(fr.sigma));
  if (!a.field_out.empty()) qmd::io::write_file(a.field_out, qmd::io::to_json(fr.f_check));
  json details = json::object();
  for (const auto& [k, v] : fr.details) details[k] = v;
  const bool passed = fr.passed && th.passed;
  json j{{"delta", fr.delta},
         {"nudges", fr.nudges},
         {"grad_tol", gt},
         {"betti_c", th.betti_c},
         {"betti_sigma", th.betti_sigma},
         {"descent_ok", th.descent_ok},
         {"c1_distance", qmd::c1_distance(f, fr.f_check)},
         {"details", details},
         {"passed", passed}};
  std::cout << qmd::io::dump(j);
  return passed ? kPass : kFail;
}

struct SpecseqArgs {
  std::string descriptor, pages = "all", out;
  std::optional<double> cutoff;
};

int run_specseq(const SpecseqArgs& a) {
  qmd::QMDDescriptor d = qmd::io::descriptor_from_json(qmd::io::read_file(a.descriptor));
  if (a.cutoff) d = qmd::truncate_by_action(d, *a.cutoff);
  int last = 0;
  if (a.pages != "all") {
    try {
      std::size_t used = 0;
      last = std::stoi(a.pages, &used);
      if (used != a.pages.size() || last < 1) throw std::invalid_argument(a.pages);
    } catch (const std::exception&) {
      throw UsageError("--pages must be 'all' or a positive integer");
    }
  }
  json j;
  try {
    const qmd::FilteredComplex fc = qmd::build_from_qmd(d);
    qmd::require_valid(fc);
    if (last == 0) last = qmd::converge(fc).stable_index;
    j = qmd::io::page_report(fc, 1, last);
  } catch (const qmd::FiltrationError& e) {
    std::cout << qmd::io::dump({{"passed", false}, {"error", e.what()}});
    return kFail;
  } catch (const qmd::DescriptorError& e) {
    std::cout << qmd::io::dump({{"passed", false}, {"error", e.what()}});
    return kFail;
  }
  const bool ok = j["associated_graded_ok"].get<bool>();
  emit(j, a.out);
  return ok ? kPass : kFail;
}

int run_maslov(const std::string& pa, const std::string& pb) {
  const auto a = qmd::io::path_from_json(qmd::io::read_file(pa));
  const auto b = qmd::io::path_from_json(qmd::io::read_file(pb));
  try {
    const qmd::MaslovResult r = qmd::maslov_crossings(a, b);
    json crossings = json::array();
    for (const auto& c : r.crossings)
      crossings.push_back({{"time", c.time}, {"endpoint", c.endpoint}, {"half_units", c.half_units}});
    std::cout << qmd::io::dump(
        {{"index", r.index.str()}, {"identically_crossing", r.identically_crossing}, {"crossings", crossings}});
    return kPass;
  } catch (const qmd::NonRegularCrossingError& e) {
    std::cout << qmd::io::dump({{"passed", false}, {"error", e.what()}});
    return kFail;
  }
}

void write_fixtures(const std::string& dir) {
  namespace fx = qmd::fixtures;
  std::filesystem::create_directories(dir);
  auto put = [&](const std::string& name, const json& j) { qmd::io::write_file(dir + "/" + name + ".json", j); };
  put("x_squared", qmd::io::to_json(fx::x_squared()));
  put("quadric_plus_quartic", qmd::io::to_json(fx::quadric_plus_quartic()));
  put("quartic", qmd::io::to_json(fx::quartic()));
  put("saddle", qmd::io::to_json(fx::saddle()));
  put("saddle_tau", qmd::io::to_json(fx::saddle_tau()));
  put("torus_height", qmd::io::to_json(fx::torus_height()));
  put("figure_eight_min", qmd::io::to_json(fx::figure_eight(1)));
  put("figure_eight_max", qmd::io::to_json(fx::figure_eight(-1)));
  put("corner", qmd::io::to_json(fx::corner()));
  put("flattened_mask", qmd::io::to_json(fx::flattened_mask()));
  put("annulus_kunneth_descriptor", qmd::io::to_json(fx::annulus_kunneth_descriptor()));
  put("cancellation_descriptor", qmd::io::to_json(fx::cancellation_descriptor()));
  put("length_two_descriptor", qmd::io::to_json(fx::length_two_descriptor()));
  put("five_piece_descriptor", qmd::io::to_json(fx::five_piece_descriptor()));
  put("log_corner_descriptor", qmd::io::to_json(fx::log_corner_descriptor()));
  put("four_lines_descriptor", qmd::io::to_json(fx::four_lines_descriptor()));
  put("path_quarter_turn", qmd::io::to_json(qmd::LagrangianLinePath{{0.0, 0.5, 1.0}, {0.0, std::numbers::pi / 4, std::numbers::pi / 2}}));
  put("path_constant", qmd::io::to_json(qmd::LagrangianLinePath{{0.0, 1.0}, {0.0, 0.0}}));
  // Sits on the constant line for the first half: a tangential crossing.
  put("path_stall", qmd::io::to_json(qmd::LagrangianLinePath{{0.0, 0.5, 1.0}, {0.0, 0.0, 0.5}}));
  qmd::QMDDescriptor bad;
  bad.pieces.push_back({"low", 1.0, 1, qmd::Betti{1}, std::nullopt, std::nullopt});
  bad.pieces.push_back({"high", 2.0, 0, qmd::Betti{1}, std::nullopt, std::nullopt});
  bad.cross_terms.push_back({"low.h0_0", "high.h0_0"});
  put("increasing_cross_term_descriptor", qmd::io::to_json(bad));
}

void print_case(const qmd::catalog::CaseReport& r) {
  std::cout << r.name << ": " << (r.passed ? "pass" : "FAIL") << "\n";
  for (const auto& c : r.checks)
    std::cout << "  " << (c.passed ? "ok  " : "FAIL") << " " << c.name << " [" << qmd::catalog::to_string(c.origin)
              << "] expected " << c.expected << ", got " << c.actual << "\n";
}

struct ExampleArgs {
  std::string name, fixtures_dir;
  bool list = false, as_json = false;
};

int run_example(const ExampleArgs& a) {
  if (!a.fixtures_dir.empty()) {
    write_fixtures(a.fixtures_dir);
    return kPass;
  }
  if (a.list) {
    for (const auto& n : qmd::catalog::list_examples()) std::cout << n << "\n";
    return kPass;
  }
  if (a.name.empty()) throw UsageError("example needs a name, --list or --write-fixtures");
  qmd::catalog::CaseReport r;
  try {
    r = qmd::catalog::run_example(a.name);
  } catch (const qmd::catalog::UnknownExampleError& e) {
    throw UsageError(e.what());
  }
  if (a.as_json) {
    std::cout << qmd::io::dump(qmd::io::to_json(r));
  } else {
    if (a.name == "monodromy") std::cout << qmd::catalog::to_string(qmd::catalog::monodromy_swapped()) << "\n";
    print_case(r);
  }
  return r.passed ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degenerate critical sets, flattening, spectral sequences and Maslov indices"};
  app.require_subcommand(1);

  auto positive = CLI::PositiveNumber;

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Check a degeneracy condition on a sampled field");
  analyze->add_option("--field", aa.field, "Field JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("--tau", aa.tau, "Auxiliary function JSON")->check(CLI::ExistingFile);
  analyze->add_option("--chart", aa.chart, "Free axes of S, comma separated; 'all' or 'none'");
  analyze->add_option("--base", aa.base, "Base point of S, one coordinate per axis");
  analyze->add_option("--check", aa.check, "auto|minimally_degenerate|flattened|qmd|classify")
      ->check(CLI::IsMember({"auto", "minimally_degenerate", "flattened", "qmd", "classify"}));
  analyze->add_option("--grad-tol", aa.grad_tol)->check(positive);
  analyze->add_option("--eig-tol", aa.eig_tol)->check(positive);
  analyze->add_option("--value-tol", aa.value_tol)->check(positive);
  analyze->add_option("--out", aa.out, "Write the report here instead of stdout");

  FlattenArgs fa;
  auto* flat = app.add_subcommand("flatten", "Flatten a field near its minimal critical set");
  flat->add_option("--field", fa.field)->required()->check(CLI::ExistingFile);
  flat->add_option("--delta", fa.delta)->required();
  flat->add_option("--out", fa.out, "Sigma mask JSON");
  flat->add_option("--field-out", fa.field_out, "Flattened field JSON");
  flat->add_option("--grad-tol", fa.grad_tol)->check(positive);

  SpecseqArgs sa;
  auto* spec = app.add_subcommand("specseq", "Pages of the spectral sequence of a descriptor");
  spec->add_option("--descriptor", sa.descriptor)->required()->check(CLI::ExistingFile);
  spec->add_option("--pages", sa.pages, "'all' or the last page to print");
  spec->add_option("--cutoff", sa.cutoff, "Keep pieces with action below this");
  spec->add_option("--out", sa.out);

  std::string path_a, path_b;
  auto* mas = app.add_subcommand("maslov", "Relative Maslov index of two paths of lines");
  mas->add_option("--path-a", path_a)->required()->check(CLI::ExistingFile);
  mas->add_option("--path-b", path_b)->required()->check(CLI::ExistingFile);

  ExampleArgs ea;
  auto* ex = app.add_subcommand("example", "Run a catalog case");
  ex->add_option("name", ea.name);
  ex->add_flag("--list", ea.list);
  ex->add_flag("--json", ea.as_json);
  ex->add_option("--write-fixtures", ea.fixtures_dir, "Write the fixture files into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*analyze) return run_analyze(aa);
    if (*flat) return run_flatten(fa);
    if (*spec) return run_specseq(sa);
    if (*mas) return run_maslov(path_a, path_b);
    if (*ex) return run_example(ea);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qmd::io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qmd::io::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qmd::GridMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
