#ifndef ASTAR_IO_HPP
#define ASTAR_IO_HPP

// JSON problem files, result envelopes and CSV export of range boundaries.
//
// A matrix object is {"n": n, "data": [[re, im], ...]} with n*n entries in
// row-major order.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "astar/seminorms.hpp"

namespace astar::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
  return v;
}

}  // namespace detail

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidArgument, "complex entries are [re, im] pairs");
  return {detail::finite_number(j[0], "real part"), detail::finite_number(j[1], "imaginary part")};
}

inline Json vector_to_json(std::span<const Complex> v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

inline Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "vector must be an array of [re, im] pairs");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  return Json{{"n", m.size()}, {"data", vector_to_json(m.entries())}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
    throw Error(ErrorCode::InvalidArgument, "matrix object needs \"n\" and \"data\"");
  }
  const Json& jn = j.at("n");
  if (!jn.is_number_integer() || jn.get<std::int64_t>() < 1 || jn.get<std::int64_t>() > std::int64_t(ComplexMatrix::max_dim)) {
    throw Error(ErrorCode::InvalidArgument, "\"n\" must be an integer in [1, 64]");
  }
  const auto n = jn.get<std::size_t>();
  Vector data = vector_from_json(j.at("data"));
  if (data.size() != n * n) {
    throw Error(ErrorCode::InvalidArgument,
                "\"data\" holds " + std::to_string(data.size()) + " entries, expected n^2 = " + std::to_string(n * n));
  }
  return ComplexMatrix(n, std::move(data));
}

struct ProblemFile {
  ComplexMatrix a;
  ComplexMatrix x;
  std::optional<ComplexMatrix> y;
  double lambda = 1.0;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

inline ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "problem file must be a JSON object");
  if (!j.contains("a") || !j.contains("x")) throw Error(ErrorCode::InvalidArgument, "problem file needs \"a\" and \"x\"");
  ProblemFile p{matrix_from_json(j.at("a")), matrix_from_json(j.at("x")), std::nullopt, 1.0};
  if (j.contains("y") && !j.at("y").is_null()) p.y = matrix_from_json(j.at("y"));
  if (j.contains("lambda")) p.lambda = detail::finite_number(j.at("lambda"), "lambda");
  if (!(p.lambda >= 0.0 && p.lambda <= 1.0)) throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in [0, 1]");
  if (p.x.size() != p.a.size() || (p.y && p.y->size() != p.a.size())) {
    throw Error(ErrorCode::DimensionMismatch, "a, x and y must share one dimension");
  }
  return p;
}

/// Parses problem-file text; malformed JSON is reported as InvalidArgument.
inline ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  return problem_from_json(j);
}

inline Json problem_to_json(const ProblemFile& p) {
  Json j{{"a", matrix_to_json(p.a)}, {"x", matrix_to_json(p.x)}};
  if (p.y) j["y"] = matrix_to_json(*p.y);
  j["lambda"] = p.lambda;
  return j;
}

struct WitnessRecord {
  ComplexMatrix h;
  Vector u;
  double trace_ha = 0.0;

  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

inline WitnessRecord witness_record(const StateWitness& s) { return {s.h, s.u, s.trace_ha}; }

struct ThetaRecord {
  double theta = 0.0;
  double signed_real = 0.0;
  double residual_x = 0.0;
  Vector u;

  friend bool operator==(const ThetaRecord&, const ThetaRecord&) = default;
};

struct Diagnostics {
  int starts_used = 0;
  int iterations = 0;
  bool converged = true;
  std::uint64_t seed = 0;

  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

using Scalar = std::variant<bool, double, Complex>;

/// Output of every CLI command. Optional parts are omitted from the JSON
/// when empty.
struct ResultEnvelope {
  std::string command;
  std::vector<std::pair<std::string, Scalar>> values;
  std::optional<ComplexMatrix> matrix;
  std::optional<WitnessRecord> witness;
  std::vector<std::pair<std::string, double>> certificate;
  std::vector<ThetaRecord> theta_witnesses;
  std::vector<std::string> warnings;
  Diagnostics diagnostics;

  friend bool operator==(const ResultEnvelope&, const ResultEnvelope&) = default;
};

inline Json scalar_to_json(const Scalar& s) {
  if (const bool* b = std::get_if<bool>(&s)) return *b;
  if (const double* d = std::get_if<double>(&s)) return *d;
  return complex_to_json(std::get<Complex>(s));
}

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return detail::finite_number(j, "value");
  return complex_from_json(j);
}

inline Json envelope_to_json(const ResultEnvelope& e) {
  Json j;
  j["command"] = e.command;
  Json values = Json::object();
  for (const auto& [k, v] : e.values) values[k] = scalar_to_json(v);
  j["values"] = std::move(values);
  if (e.matrix) j["matrix"] = matrix_to_json(*e.matrix);
  if (e.witness) {
    j["witness"] = Json{{"h", matrix_to_json(e.witness->h)},
                        {"u", vector_to_json(e.witness->u)},
                        {"trace_ha", e.witness->trace_ha}};
  }
  if (!e.certificate.empty()) {
    Json c = Json::object();
    for (const auto& [k, v] : e.certificate) c[k] = v;
    j["certificate"] = std::move(c);
  }
  if (!e.theta_witnesses.empty()) {
    Json t = Json::array();
    for (const auto& r : e.theta_witnesses) {
      t.push_back(Json{{"theta", r.theta}, {"signed_real", r.signed_real}, {"residual_x", r.residual_x},
                       {"u", vector_to_json(r.u)}});
    }
    j["theta_witnesses"] = std::move(t);
  }
  if (!e.warnings.empty()) j["warnings"] = e.warnings;
  j["diagnostics"] = Json{{"starts_used", e.diagnostics.starts_used},
                          {"iterations", e.diagnostics.iterations},
                          {"converged", e.diagnostics.converged},
                          {"seed", e.diagnostics.seed}};
  return j;
}

inline ResultEnvelope envelope_from_json(const Json& j) {
  ResultEnvelope e;
  try {
    e.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("values").items()) e.values.emplace_back(k, scalar_from_json(v));
    if (j.contains("matrix")) e.matrix = matrix_from_json(j.at("matrix"));
    if (j.contains("witness")) {
      const Json& w = j.at("witness");
      e.witness = WitnessRecord{matrix_from_json(w.at("h")), vector_from_json(w.at("u")),
                                detail::finite_number(w.at("trace_ha"), "trace_ha")};
    }
    if (j.contains("certificate")) {
      for (const auto& [k, v] : j.at("certificate").items()) e.certificate.emplace_back(k, detail::finite_number(v, k.c_str()));
    }
    if (j.contains("theta_witnesses")) {
      for (const auto& t : j.at("theta_witnesses")) {
        e.theta_witnesses.push_back(ThetaRecord{t.at("theta").get<double>(), t.at("signed_real").get<double>(),
                                                t.at("residual_x").get<double>(), vector_from_json(t.at("u"))});
      }
    }
    if (j.contains("warnings")) e.warnings = j.at("warnings").get<std::vector<std::string>>();
    const Json& d = j.at("diagnostics");
    e.diagnostics = Diagnostics{d.at("starts_used").get<int>(), d.at("iterations").get<int>(),
                                d.at("converged").get<bool>(), d.at("seed").get<std::uint64_t>()};
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed envelope: ") + ex.what());
  }
  return e;
}

inline std::string dump(const ResultEnvelope& e) { return envelope_to_json(e).dump(2) + "\n"; }

inline ResultEnvelope parse_envelope(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + ex.what());
  }
  return envelope_from_json(j);
}

/// theta,re,im with 17 significant digits and LF line endings. Open the
/// stream in binary mode.
inline void write_boundary_csv(std::ostream& os, const RangeBoundary& b) {
  os << "theta,re,im\n";
  char line[96];
  for (std::size_t k = 0; k < b.points.size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", b.angles[k], b.points[k].real(), b.points[k].imag());
    os << line;
  }
}

}  // namespace astar::io

#endif  // ASTAR_IO_HPP
