#ifndef ASTAR_ACCEPTANCE_HPP
#define ASTAR_ACCEPTANCE_HPP

// The acceptance suite: ten checks on the Example values, the norm
// inequalities, the oracles, and the parallelism and orthogonality results.
// Each check reports one row (criterion, expected, got, tol, pass).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "astar/generators.hpp"
#include "astar/geometry.hpp"
#include "astar/oracle.hpp"
#include "astar/seminorms.hpp"

namespace astar::acceptance {

struct Row {
  int id = 0;
  std::string criterion;
  std::string expected;
  std::string got;
  double tol = 0.0;
  bool pass = false;
};

struct Options {
  /// Replaces every tolerance of the suite when set.
  std::optional<double> tol;
  std::uint64_t seed = 20240601;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Positive decisions met anywhere in the suite; criterion 8 audits them.
struct Audit {
  int parallel_count = 0;
  double worst_certificate = 0.0;  ///< max residual / (1 + ||x|| ||y||)
  int orthogonal_count = 0;
  double worst_witness_residual = 0.0;
  double worst_signed_real = 0.0;  ///< most negative signed_real

  void record(const ParallelResult& r) {
    if (!r.parallel) return;
    ++parallel_count;
    const double scale = 1.0 + r.norm_x * r.norm_y;
    const double worst = std::max({r.cert.residual_pairing, r.cert.residual_x, r.cert.residual_y}) / scale;
    worst_certificate = std::max(worst_certificate, worst);
  }

  void record(const OrthoResult& r) {
    if (!r.orthogonal) return;
    ++orthogonal_count;
    for (const auto& t : r.theta_witnesses) {
      worst_witness_residual = std::max(worst_witness_residual, t.residual_x);
      worst_signed_real = std::min(worst_signed_real, t.signed_real);
    }
    if (r.theta_witnesses.empty() && r.norm_x > astar::detail::zero_norm) worst_witness_residual = INFINITY;
  }
};

struct Context {
  Options options;
  GeometryConfig geometry;
  Audit audit;

  double tol(double pinned) const { return options.tol.value_or(pinned); }
  std::mt19937_64 rng(int id) const { return std::mt19937_64(options.seed + 7919u * std::uint64_t(id)); }

  ParallelResult parallel(const Weight& w, double lambda, const ComplexMatrix& x, const ComplexMatrix& y) {
    ParallelResult r = is_parallel(w, lambda, x, y, geometry);
    audit.record(r);
    return r;
  }
  OrthoResult orthogonal(const Weight& w, double lambda, const ComplexMatrix& x, const ComplexMatrix& y) {
    OrthoResult r = is_orthogonal(w, lambda, x, y, geometry);
    audit.record(r);
    return r;
  }
};

inline Row example_values(Context& ctx) {
  const Weight w = validate_weight(ComplexMatrix::diagonal({2.0, 1.0}));
  const ComplexMatrix x = ComplexMatrix::from_rows({{0, 1}, {0, 0}});
  const double tol_top = ctx.tol(1e-8);
  const double tol_curve = ctx.tol(1e-6);
  auto sq = [&](double lambda) {
    const double v = al_norm(w, lambda, x, ctx.geometry.solver).value;
    return v * v;
  };
  const double err_top = std::abs(sq(1.0) - 2.0);
  double err_curve = 0.0;
  for (double l : {0.0, 0.1, 0.25, 0.5}) err_curve = std::max(err_curve, std::abs(sq(l) - 1.0 / (2.0 * (1.0 - l))));
  for (double l : {0.5, 0.6, 0.7, 0.9}) err_curve = std::max(err_curve, std::abs(sq(l) - 2.0 * l));
  double below = 0.0;
  for (double l : {0.0, 0.1, 0.25, 0.5, 0.6, 0.7}) below = std::max(below, sq(l));
  Row r;
  r.criterion = "Example a=diag(2,1), x=e12";
  r.expected = "|n(1)^2-2|<=1e-8, curve err<=1e-6, max n^2<2";
  r.got = fmt(err_top) + ", " + fmt(err_curve) + ", " + fmt(below);
  r.tol = tol_curve;
  r.pass = err_top <= tol_top && err_curve <= tol_curve && below < 2.0;
  return r;
}

inline Row sandwich(Context& ctx) {
  auto rng = ctx.rng(2);
  const double tol = ctx.tol(1e-7);
  double worst = -INFINITY;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 3;
    const Weight w = gen::random_weight(n, rng);
    const ComplexMatrix x = gen::random_matrix(n, rng);
    const double lambda = gen::uniform(rng, 0.0, 1.0);
    const double v = a_numradius(w, x).value;
    const double nrm = a_norm(w, x).value;
    const double al = al_norm(w, lambda, x, ctx.geometry.solver).value;
    worst = std::max({worst, v - al, al - nrm, 0.5 * nrm - v});
  }
  return {0, "Sandwich v_a <= n_lambda <= n_a, n_a/2 <= v_a", "max violation <= tol (200 triples)", fmt(worst), tol,
          worst <= tol};
}

inline Row selfadjoint_collapse(Context& ctx) {
  auto rng = ctx.rng(3);
  const double tol = ctx.tol(1e-6);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 3;
    const Weight w = gen::random_weight(n, rng);
    const ComplexMatrix x = gen::a_selfadjoint(w, rng);
    const double v = a_numradius(w, x).value;
    const double nrm = a_norm(w, x).value;
    for (double lambda : {0.0, 0.3, 0.7, 1.0}) {
      const double al = al_norm(w, lambda, x, ctx.geometry.solver).value;
      worst = std::max({worst, std::abs(v - al) / (1.0 + nrm), std::abs(nrm - al) / (1.0 + nrm)});
    }
  }
  return {0, "a-selfadjoint: v_a = n_lambda = n_a", "max err/(1+n_a) <= tol (50 x 4)", fmt(worst), tol, worst <= tol};
}

inline Row adjoint_identities(Context& ctx) {
  auto rng = ctx.rng(4);
  const double tol = ctx.tol(1e-6);
  double worst_adj = 0.0;
  double worst_prod = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 3;
    const Weight w = gen::random_weight(n, rng);
    const ComplexMatrix x = gen::random_matrix(n, rng);
    const double lambda = gen::uniform(rng, 0.0, 1.0);
    const ComplexMatrix xs = a_adjoint(w, x);
    const double nrm = a_norm(w, x).value;
    const double al = al_norm(w, lambda, x, ctx.geometry.solver).value;
    const double al_adj = al_norm(w, lambda, xs, ctx.geometry.solver).value;
    const double al_prod = al_norm(w, lambda, x * xs, ctx.geometry.solver).value;
    worst_adj = std::max(worst_adj, std::abs(al_adj - al));
    worst_prod = std::max(worst_prod, std::abs(al_prod - nrm * nrm) / (1.0 + nrm * nrm));
  }
  return {0, "n(x#) = n(x), n(x x#) = n_a(x)^2", "both errors <= tol (50 pairs)",
          fmt(worst_adj) + ", " + fmt(worst_prod), tol, worst_adj <= tol && worst_prod <= tol};
}

inline Row oracle_agreement(Context& ctx) {
  auto rng = ctx.rng(5);
  const double tol = ctx.tol(1e-6);
  const double tol_decision = ctx.geometry.tol_decision;
  const oracle::OracleConfig ocfg;
  double worst_rel = 0.0;
  int mismatches = 0;
  int positives = 0;
  for (int k = 0; k < 125; ++k) {
    const std::size_t n = k < 100 ? 2 : 3;
    const Weight w = gen::random_weight(n, rng);
    const double lambda = gen::uniform(rng, 0.0, 1.0);
    std::pair<ComplexMatrix, ComplexMatrix> xy;
    switch (k % 3) {
      case 0: xy = {gen::random_matrix(n, rng), gen::random_matrix(n, rng)}; break;
      case 1: xy = gen::parallel_pair(w, rng); break;
      default: xy = gen::orthogonal_pair(w, rng); break;
    }
    const auto& [x, y] = xy;
    const double al = al_norm(w, lambda, x, ctx.geometry.solver).value;
    const double ox = oracle::sphere_sample_max(w, lambda, x, ocfg);
    const double oy = oracle::sphere_sample_max(w, lambda, y, ocfg);
    worst_rel = std::max(worst_rel, std::abs(al - ox) / std::max(al, 1e-300));

    const OrthoResult orth = ctx.orthogonal(w, lambda, x, y);
    const auto [min_xi, xi] = oracle::grid_min_xi(w, lambda, x, y, ocfg);
    const bool oracle_orth = 1.0 - min_xi / ox <= tol_decision;
    const ParallelResult par = ctx.parallel(w, lambda, x, y);
    const auto [max_mu, mu] = oracle::grid_max_mu(w, lambda, (1.0 / ox) * x, (1.0 / oy) * y, ocfg);
    const bool oracle_par = 2.0 - max_mu <= tol_decision;
    mismatches += (orth.orthogonal != oracle_orth) + (par.parallel != oracle_par);
    positives += orth.orthogonal + par.parallel;
  }
  return {0, "Oracle agreement (100 at n=2, 25 at n=3)",
          "rel err <= tol, 0 decision mismatches",
          fmt(worst_rel) + ", " + std::to_string(mismatches) + " mismatches (" + std::to_string(positives) +
              " positive)",
          tol, worst_rel <= tol && mismatches == 0};
}

/// Largest eigenvalue of a Hermitian 2x2 or 3x3 matrix from its
/// characteristic polynomial, closed form then Newton on the cubic.
inline double top_root(const ComplexMatrix& h) {
  const std::size_t n = h.size();
  auto re = [&](std::size_t i, std::size_t j) { return h(i, j); };
  if (n == 2) {
    const double tr = re(0, 0).real() + re(1, 1).real();
    const double det = (re(0, 0) * re(1, 1) - re(0, 1) * re(1, 0)).real();
    return 0.5 * (tr + std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
  }
  const double c2 = (re(0, 0) + re(1, 1) + re(2, 2)).real();
  const double c1 = (re(0, 0) * re(1, 1) - re(0, 1) * re(1, 0) + re(0, 0) * re(2, 2) - re(0, 2) * re(2, 0) +
                     re(1, 1) * re(2, 2) - re(1, 2) * re(2, 1))
                        .real();
  const double c0 = (re(0, 0) * (re(1, 1) * re(2, 2) - re(1, 2) * re(2, 1)) -
                     re(0, 1) * (re(1, 0) * re(2, 2) - re(1, 2) * re(2, 0)) +
                     re(0, 2) * (re(1, 0) * re(2, 1) - re(1, 1) * re(2, 0)))
                        .real();
  // t^3 - c2 t^2 + c1 t - c0, shifted by t = s + c2/3 to s^3 + p s + q.
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = -2.0 * c2 * c2 * c2 / 27.0 + c2 * c1 / 3.0 - c0;
  double t = shift;
  if (p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    t = shift + m * std::cos(std::acos(arg) / 3.0);
  }
  for (int it = 0; it < 4; ++it) {
    const double f = ((t - c2) * t + c1) * t - c0;
    const double df = (3.0 * t - 2.0 * c2) * t + c1;
    if (df == 0.0) break;
    t -= f / df;
  }
  return t;
}

inline Row classical_limit(Context& ctx) {
  auto rng = ctx.rng(6);
  const double tol = ctx.tol(1e-8);
  const Weight w2 = validate_weight(ComplexMatrix::identity(2));
  const Weight w3 = validate_weight(ComplexMatrix::identity(3));
  double worst = 0.0;
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 2 + k % 2;
    const ComplexMatrix x = gen::random_matrix(n, rng);
    const double sigma = std::sqrt(top_root((x.adjoint() * x).hermitian_part()));
    const double al = al_norm(n == 2 ? w2 : w3, 1.0, x, ctx.geometry.solver).value;
    worst = std::max(worst, std::abs(al - sigma));
  }
  const double v = a_numradius(w2, ComplexMatrix::from_rows({{0, 1}, {0, 0}})).value;
  const double err_v = std::abs(v - 0.5);
  return {0, "a=I: n_1 = operator norm, v(e12) = 1/2", "both errors <= tol", fmt(worst) + ", " + fmt(err_v), tol,
          worst <= tol && err_v <= tol};
}

inline Row normaloid_theorem(Context& ctx) {
  auto rng = ctx.rng(7);
  int disagreements = 0;
  int normaloid_false = 0;
  int non_normaloid_true = 0;
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 2 + k % 2;
    const Weight w = gen::random_weight(n, rng);
    const bool want = k < 20;
    ComplexMatrix x = want ? gen::normaloid(w, rng) : gen::random_matrix(n, rng);
    while (!want) {
      const double nrm = a_norm(w, x).value;
      if (nrm - a_numradius(w, x).value > 0.05 * nrm) break;
      x = gen::random_matrix(n, rng);
    }
    for (double lambda : {0.2, 0.8}) {
      const NormaloidReport r = normaloid_equivalences(w, lambda, x, 1e-6, ctx.geometry);
      disagreements += !r.agree;
      if (want && !r.normaloid) ++normaloid_false;
      if (!want && r.normaloid) ++non_normaloid_true;
    }
  }
  return {0, "Normaloid: x||1 <=> v_a=n_a <=> x||x#", "0 disagreements (20+20 elements x 2 lambdas)",
          std::to_string(disagreements) + " disagreements, " + std::to_string(normaloid_false + non_normaloid_true) +
              " misclassified",
          0.0, disagreements == 0 && normaloid_false == 0 && non_normaloid_true == 0};
}

inline Row parallel_to_orthogonal(Context& ctx) {
  auto rng = ctx.rng(9);
  const double tol = ctx.tol(1e-5);
  double worst = 0.0;
  int failures = 0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + k % 3;
    const Weight w = gen::random_weight(n, rng);
    const double lambda = gen::uniform(rng, 0.0, 1.0);
    const auto [x, y] = gen::parallel_pair(w, rng);
    ParallelOrthoReport r;
    try {
      r = parallelism_implies_orthogonality_check(w, lambda, x, y, ctx.geometry);
    } catch (const Error&) {
      ++failures;
      continue;
    }
    ctx.audit.record(r.part1);
    ctx.audit.record(r.part2);
    worst = std::max({worst, r.defect1, r.defect2});
    failures += r.defect1 > tol || r.defect2 > tol;
  }
  return {0, "Parallel => x, y perp ||y||x - mu||x||y", "defects <= tol (20 pairs)",
          fmt(worst) + ", " + std::to_string(failures) + " failures", tol, failures == 0};
}

inline Row homogeneity(Context& ctx) {
  auto rng = ctx.rng(10);
  int flips = 0;
  int par_pos = 0;
  int orth_pos = 0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 2;
    const Weight w = gen::random_weight(n, rng);
    const double lambda = gen::uniform(rng, 0.0, 1.0);
    std::pair<ComplexMatrix, ComplexMatrix> xy;
    switch (k % 3) {
      case 0: xy = gen::parallel_pair(w, rng); break;
      case 1: xy = gen::orthogonal_pair(w, rng); break;
      default: xy = {gen::random_matrix(n, rng), gen::random_matrix(n, rng)}; break;
    }
    const auto& [x, y] = xy;
    const ComplexMatrix xs = a_adjoint(w, x);
    const ComplexMatrix ys = a_adjoint(w, y);
    const double sa = gen::uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    const double sb = gen::uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    const double alpha = sa * gen::uniform(rng, 0.2, 5.0);
    const double beta = sb * gen::uniform(rng, 0.2, 5.0);
    const Complex calpha = std::polar(gen::uniform(rng, 0.2, 5.0), gen::uniform(rng, 0.0, 2.0 * std::numbers::pi));
    const Complex cbeta = std::polar(gen::uniform(rng, 0.2, 5.0), gen::uniform(rng, 0.0, 2.0 * std::numbers::pi));

    const bool p0 = ctx.parallel(w, lambda, x, y).parallel;
    const bool p1 = ctx.parallel(w, lambda, alpha * x, beta * y).parallel;
    const bool p2 = ctx.parallel(w, lambda, xs, ys).parallel;
    const bool o0 = ctx.orthogonal(w, lambda, x, y).orthogonal;
    const bool o1 = ctx.orthogonal(w, lambda, calpha * x, cbeta * y).orthogonal;
    const bool o2 = ctx.orthogonal(w, lambda, xs, ys).orthogonal;
    flips += (p0 != p1) + (p0 != p2) + (o0 != o1) + (o0 != o2);
    par_pos += p0;
    orth_pos += o0;
  }
  return {0, "Scaling and adjoint invariance of decisions", "0 flips (50 instances)",
          std::to_string(flips) + " flips (" + std::to_string(par_pos) + " parallel, " + std::to_string(orth_pos) +
              " orthogonal)",
          0.0, flips == 0};
}

inline Row certificates(const Context& ctx) {
  const double tol = ctx.tol(1e-5);
  const Audit& a = ctx.audit;
  const bool pass = a.worst_certificate <= tol && a.worst_witness_residual <= tol && a.worst_signed_real >= -tol &&
                    a.parallel_count > 0 && a.orthogonal_count > 0;
  return {0, "Certificates and theta witnesses of positive decisions",
          "cert <= tol*(1+|x||y|), witness res <= tol, signed >= -tol",
          fmt(a.worst_certificate) + ", " + fmt(a.worst_witness_residual) + ", " + fmt(a.worst_signed_real) + " (" +
              std::to_string(a.parallel_count) + " par, " + std::to_string(a.orthogonal_count) + " orth)",
          tol, pass};
}

}  // namespace detail

/// Runs every criterion; rows come back ordered by id.
inline std::vector<Row> run(const Options& options = {}, const std::function<void(const Row&)>& progress = {}) {
  detail::Context ctx{options, {}, {}};
  std::vector<Row> rows;
  auto add = [&](int id, Row r) {
    r.id = id;
    if (progress) progress(r);
    rows.push_back(std::move(r));
  };
  add(1, detail::example_values(ctx));
  add(2, detail::sandwich(ctx));
  add(3, detail::selfadjoint_collapse(ctx));
  add(4, detail::adjoint_identities(ctx));
  add(5, detail::oracle_agreement(ctx));
  add(6, detail::classical_limit(ctx));
  add(7, detail::normaloid_theorem(ctx));
  add(9, detail::parallel_to_orthogonal(ctx));
  add(10, detail::homogeneity(ctx));
  add(8, detail::certificates(ctx));
  std::sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) { return l.id < r.id; });
  return rows;
}

inline std::string format_row(const Row& r) {
  char head[16];
  std::snprintf(head, sizeof head, "%2d  %s  ", r.id, r.pass ? "PASS" : "FAIL");
  return std::string(head) + r.criterion + " | expected: " + r.expected + " | got: " + r.got +
         " | tol: " + detail::fmt(r.tol);
}

inline void write_table(std::ostream& os, const std::vector<Row>& rows) {
  os << "criterion\texpected\tgot\ttol\tpass\n";
  for (const auto& r : rows) {
    os << r.id << ' ' << r.criterion << '\t' << r.expected << '\t' << r.got << '\t' << detail::fmt(r.tol) << '\t'
       << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

inline bool all_pass(const std::vector<Row>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

}  // namespace astar::acceptance

#endif  // ASTAR_ACCEPTANCE_HPP
