// astar: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 math-domain
// error, 4 I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "astar/acceptance.hpp"
#include "astar/astar.hpp"
#include "astar/io.hpp"

namespace {

using namespace astar;

enum Exit { ok = 0, verification_failed = 1, bad_input = 2, math_domain = 3, io_failure = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::LambdaOutOfRange:
    case ErrorCode::DimensionTooLarge:
      return bad_input;
    default:
      return math_domain;
  }
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Common {
  std::string file;
  std::optional<double> lambda;
  int starts = SolverConfig{}.random_starts;
  std::uint64_t seed = 0;
  std::optional<double> tol;
};

struct Loaded {
  io::ProblemFile problem;
  std::optional<Weight> weight;
  double lambda = 1.0;
};

/// Parse failures are input errors; a bad weight is a math-domain error.
Loaded load(const Common& c) {
  Loaded l;
  try {
    l.problem = io::parse_problem(read_text(c.file));
    l.lambda = c.lambda.value_or(l.problem.lambda);
    require_lambda(l.lambda);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidArgument, e.what());
  }
  l.weight = validate_weight(l.problem.a);
  return l;
}

const ComplexMatrix& need_y(const Loaded& l) {
  if (!l.problem.y) throw Error(ErrorCode::InvalidArgument, "this command needs \"y\" in the problem file");
  return *l.problem.y;
}

SolverConfig solver(const Common& c) {
  SolverConfig s;
  s.random_starts = c.starts;
  s.rng_seed = c.seed;
  return s;
}

GeometryConfig geometry(const Common& c) {
  GeometryConfig g;
  g.solver = solver(c);
  if (c.tol) g.tol_decision = *c.tol;
  return g;
}

io::ResultEnvelope envelope(const std::string& command, const Common& c) {
  io::ResultEnvelope e;
  e.command = command;
  e.diagnostics.seed = c.seed;
  return e;
}

void put_norm(io::ResultEnvelope& e, const NormResult& r) {
  e.values.emplace_back("value", r.value);
  e.values.emplace_back("lambda", r.lambda);
  e.witness = io::witness_record(r.witness);
  e.diagnostics.starts_used = r.starts_used;
  e.diagnostics.iterations = r.iterations;
  e.diagnostics.converged = r.converged;
}

void put_parallel(io::ResultEnvelope& e, const ParallelResult& r) {
  e.values.emplace_back("parallel", r.parallel);
  e.values.emplace_back("mu", r.mu);
  e.values.emplace_back("defect", r.defect);
  e.values.emplace_back("norm_x", r.norm_x);
  e.values.emplace_back("norm_y", r.norm_y);
  if (r.witness) e.witness = io::witness_record(*r.witness);
  e.certificate = {{"residual_pairing", r.cert.residual_pairing},
                   {"residual_x", r.cert.residual_x},
                   {"residual_y", r.cert.residual_y}};
}

void put_ortho(io::ResultEnvelope& e, const OrthoResult& r, const std::string& prefix = "") {
  e.values.emplace_back(prefix + "orthogonal", r.orthogonal);
  e.values.emplace_back(prefix + "min_value", r.min_value);
  e.values.emplace_back(prefix + "argmin_xi", r.argmin_xi);
  e.values.emplace_back(prefix + "defect", r.defect);
  e.values.emplace_back(prefix + "norm_x", r.norm_x);
  e.warnings.insert(e.warnings.end(), r.warnings.begin(), r.warnings.end());
}

void put_theta(io::ResultEnvelope& e, const OrthoResult& r) {
  for (const auto& t : r.theta_witnesses) e.theta_witnesses.push_back({t.theta, t.signed_real, t.residual_x, t.witness.u});
}

void print(const io::ResultEnvelope& e) { std::cout << io::dump(e) << std::flush; }

CLI::App* add_problem_command(CLI::App& app, const std::string& name, const std::string& help, Common& c,
                              bool with_lambda = true) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("file", c.file, "problem file (JSON), - for stdin")->required();
  if (with_lambda) sub->add_option("--lambda", c.lambda, "override the problem's lambda, in [0, 1]");
  sub->add_option("--starts", c.starts, "random starts per norm evaluation")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", c.seed, "solver seed");
  return sub;
}

int run(int argc, char** argv) {
  CLI::App app{"Weighted (a, lambda)-norms, numerical ranges, parallelism and orthogonality of matrices"};
  app.require_subcommand(1);
  Common c;
  int angles = 360;
  std::string out_path;
  std::string report_path;

  auto* norm = add_problem_command(app, "norm", "(a, lambda)-norm of x with its witness state", c);
  auto* anorm = add_problem_command(app, "anorm", "a-operator seminorm of x", c, false);
  auto* numradius = add_problem_command(app, "numradius", "a-numerical radius of x", c, false);
  numradius->add_option("--angles", angles, "angle grid")->check(CLI::PositiveNumber);
  auto* range = add_problem_command(app, "range", "boundary of the a-numerical range as CSV", c, false);
  range->add_option("--angles", angles, "number of boundary angles (>= 8)");
  range->add_option("--out", out_path, "CSV path (stdout when omitted)");
  auto* adjoint = add_problem_command(app, "adjoint", "a-adjoint a^{-1} x* a", c, false);
  auto* classify = add_problem_command(app, "classify", "a-selfadjoint / a-positive / a-normaloid tests", c, false);
  classify->add_option("--tol", c.tol, "tolerance");
  auto* ortho = add_problem_command(app, "ortho", "is x orthogonal to y", c);
  ortho->add_option("--tol", c.tol, "decision tolerance on the normalized defect");
  auto* parallel = add_problem_command(app, "parallel", "is x parallel to y", c);
  parallel->add_option("--tol", c.tol, "decision tolerance on the normalized defect");
  auto* vrad_parallel = add_problem_command(app, "vrad-parallel", "parallelism for the a-numerical radius", c, false);
  vrad_parallel->add_option("--tol", c.tol, "decision tolerance on the normalized defect");
  auto* positive_ortho =
      add_problem_command(app, "positive-ortho", "orthogonality of a-positive x, y for the a-numerical radius", c, false);
  positive_ortho->add_option("--tol", c.tol, "tolerance");
  auto* normaloid = add_problem_command(app, "normaloid", "x || 1, v_a(x) = ||x||_a and x || x# side by side", c);
  normaloid->add_option("--tol", c.tol, "relative tolerance of v_a(x) = ||x||_a");
  auto* parallel_ortho = add_problem_command(app, "parallel-ortho", "for parallel x, y: x, y perp ||y||x - mu||x||y", c);
  parallel_ortho->add_option("--tol", c.tol, "decision tolerance on the normalized defect");
  auto* verify = app.add_subcommand("verify-paper", "run the acceptance suite and print a pass/fail table");
  verify->add_option("--report", report_path, "also write the table to this path");
  verify->add_option("--tol", c.tol, "override every tolerance of the suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }

  if (verify->parsed()) {
    std::ofstream report;
    if (!report_path.empty()) {
      report.open(report_path, std::ios::binary);
      if (!report) throw IoError("cannot write " + report_path);
    }
    acceptance::Options options;
    options.tol = c.tol;
    const auto rows = acceptance::run(options, [](const acceptance::Row& r) {
      std::cout << acceptance::format_row(r) << std::endl;
    });
    if (report.is_open()) {
      acceptance::write_table(report, rows);
      if (!report) throw IoError("cannot write " + report_path);
    }
    return acceptance::all_pass(rows) ? ok : verification_failed;
  }

  const Loaded l = load(c);
  const Weight& w = *l.weight;
  const ComplexMatrix& x = l.problem.x;
  require_dims(w, x);

  if (norm->parsed()) {
    auto e = envelope("norm", c);
    put_norm(e, al_norm(w, l.lambda, x, solver(c)));
    print(e);
  } else if (anorm->parsed()) {
    auto e = envelope("anorm", c);
    put_norm(e, a_norm(w, x));
    print(e);
  } else if (numradius->parsed()) {
    auto e = envelope("numradius", c);
    put_norm(e, a_numradius(w, x, angles));
    print(e);
  } else if (range->parsed()) {
    const RangeBoundary b = a_numrange_boundary(w, x, angles);
    if (out_path.empty()) {
      io::write_boundary_csv(std::cout, b);
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw IoError("cannot write " + out_path);
      io::write_boundary_csv(f, b);
      if (!f.flush()) throw IoError("cannot write " + out_path);
    }
  } else if (adjoint->parsed()) {
    auto e = envelope("adjoint", c);
    e.matrix = a_adjoint(w, x);
    print(e);
  } else if (classify->parsed()) {
    const double tol = c.tol.value_or(default_tol);
    const double v = a_numradius(w, x).value;
    const double n = a_norm(w, x).value;
    auto e = envelope("classify", c);
    e.values.emplace_back("a_selfadjoint", is_a_selfadjoint(w, x, tol));
    e.values.emplace_back("a_positive", is_a_positive(w, x, tol));
    e.values.emplace_back("a_normaloid", std::abs(v - n) <= tol * n);
    e.values.emplace_back("numradius", v);
    e.values.emplace_back("a_norm", n);
    print(e);
  } else if (ortho->parsed()) {
    const OrthoResult r = is_orthogonal(w, l.lambda, x, need_y(l), geometry(c));
    auto e = envelope("ortho", c);
    e.values.emplace_back("lambda", l.lambda);
    put_ortho(e, r);
    put_theta(e, r);
    print(e);
  } else if (parallel->parsed() || vrad_parallel->parsed()) {
    const bool vrad = vrad_parallel->parsed();
    const ParallelResult r = vrad ? is_vrad_parallel(w, x, need_y(l), geometry(c))
                                  : is_parallel(w, l.lambda, x, need_y(l), geometry(c));
    auto e = envelope(vrad ? "vrad-parallel" : "parallel", c);
    e.values.emplace_back("lambda", vrad ? 0.0 : l.lambda);
    put_parallel(e, r);
    print(e);
  } else if (positive_ortho->parsed()) {
    const PositiveOrthoResult r = vrad_positive_orthogonality(w, x, need_y(l), c.tol.value_or(default_tol));
    auto e = envelope("positive-ortho", c);
    e.values.emplace_back("orthogonal", r.orthogonal);
    if (r.witness) e.witness = io::witness_record(*r.witness);
    print(e);
  } else if (normaloid->parsed()) {
    const NormaloidReport r = normaloid_equivalences(w, l.lambda, x, c.tol.value_or(1e-6), geometry(c));
    auto e = envelope("normaloid", c);
    e.values = {{"lambda", l.lambda},
                {"parallel_to_identity", r.parallel_to_identity},
                {"normaloid", r.normaloid},
                {"parallel_to_adjoint", r.parallel_to_adjoint},
                {"agree", r.agree},
                {"numradius", r.numradius},
                {"a_norm", r.norm_a},
                {"defect_identity", r.defect_identity},
                {"defect_adjoint", r.defect_adjoint}};
    print(e);
  } else if (parallel_ortho->parsed()) {
    const ParallelOrthoReport r = parallelism_implies_orthogonality_check(w, l.lambda, x, need_y(l), geometry(c));
    auto e = envelope("parallel-ortho", c);
    e.values.emplace_back("lambda", l.lambda);
    e.values.emplace_back("holds", r.holds);
    e.values.emplace_back("mu", r.mu);
    put_ortho(e, r.part1, "x_");
    put_ortho(e, r.part2, "y_");
    e.matrix = r.z;
    print(e);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io_failure;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return math_domain;
  }
}
