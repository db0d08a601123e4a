#pragma once

// JSON and CSV encodings. Complex numbers are [re, im]; matrices are row-major
// nested arrays. Requires nlohmann/json.

#include "krel/krein.hpp"
#include "krel/model.hpp"
#include "krel/weyl.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace krel {

using Json = nlohmann::ordered_json;

/// 17 significant digits, enough to round-trip a double.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DomainError("json: complex numbers are encoded as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("json: expected an array of complex numbers");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("json: expected a row-major matrix");
  const auto rows = static_cast<Index>(j.size());
  const Index cols = rows ? static_cast<Index>(j[0].size()) : 0;
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw DomainError("json: matrix rows have different lengths");
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

inline Json to_json(const LinearRelation& t) {
  Json pairs = Json::array();
  for (Index i = 0; i < t.dim(); ++i)
    pairs.push_back(Json::array({to_json(ComplexVector(t.inputs().col(i))),
                                 to_json(ComplexVector(t.outputs().col(i)))}));
  return {{"in_dim", t.in_dim()}, {"out_dim", t.out_dim()}, {"pairs", std::move(pairs)}};
}

inline LinearRelation relation_from_json(const Json& j, const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("in_dim") || !j.contains("out_dim"))
    throw DomainError("json: relation needs in_dim and out_dim");
  const auto in = j.at("in_dim").get<Index>();
  const auto out = j.at("out_dim").get<Index>();
  if (in < 0 || out < 0) throw DomainError("json: relation dimensions must be >= 0");
  std::vector<SpanningPair> pairs;
  for (const Json& p : j.value("pairs", Json::array())) {
    if (!p.is_array() || p.size() != 2) throw DomainError("json: each pair is [input, output]");
    pairs.emplace_back(vector_from_json(p[0]), vector_from_json(p[1]));
  }
  return make_relation(in, out, pairs, tol);
}

inline Json to_json(const BoundaryPair& p) {
  return {{"base_dim_in", p.spec().base_dim_in},
          {"base_dim_out", p.spec().base_dim_out},
          {"gamma", to_json(p.gamma())}};
}

inline BoundaryPair pair_from_json(const Json& j, const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("gamma")) throw DomainError("json: boundary pair needs gamma");
  const KreinSpec spec{j.at("base_dim_in").get<Index>(), j.at("base_dim_out").get<Index>()};
  return {spec, relation_from_json(j.at("gamma"), tol), tol};
}

inline Json to_json(const Classification& c) {
  return {{"isometric", c.isometric},
          {"unitary", c.unitary},
          {"essentially_unitary", c.essentially_unitary},
          {"green_residual", c.green_residual},
          {"inverse_outside_adjoint", c.inverse_outside_adjoint},
          {"dim_gamma", c.dim_gamma},
          {"dim_adjoint", c.dim_adjoint},
          {"a_mul_distance", c.a_mul_distance},
          {"a_symmetric", c.a_symmetric},
          {"domain_is_adjoint", c.domain_is_adjoint},
          {"a_in_kernel", c.a_in_kernel},
          {"note", c.note}};
}

inline Json to_json(const WeylReport& r) {
  return {{"z", to_json(r.z)},
          {"M", to_json(r.m)},
          {"M_adj_direct", to_json(r.m_adj_direct)},
          {"M_adj_kernel", to_json(r.m_adj_kernel)},
          {"M_adj_theorem", to_json(r.m_adj_theorem)},
          {"agreement_residuals",
           {{"direct_vs_kernel", r.agreement.direct_vs_kernel},
            {"direct_vs_formula", r.agreement.direct_vs_formula},
            {"kernel_vs_formula", r.agreement.kernel_vs_formula}}},
          {"dims_agree", r.dims_agree}};
}

inline Json to_json(const NevanlinnaPoint& p) {
  Json j{{"z", to_json(p.z)},
         {"dim_M", p.dim_m},
         {"dissipative", p.dissipative},
         {"maximal", p.maximal},
         {"maximal_by_range", p.maximal_by_range},
         {"symmetry_residual", p.symmetry_residual},
         {"mul_residual", p.mul_residual}};
  j["cr_residual"] = p.cr_residual ? Json(*p.cr_residual) : Json(nullptr);
  return j;
}

/// Model JSON: {N, eigenvalues | eigenvalue_rule, phi_profile: array | rule,
/// d, points, offset_E, probe_z, regular_per_sigma}.
inline ModelSpec model_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("json: model must be an object");
  ModelSpec s;
  s.d = j.value("d", Index{1});
  if (j.contains("eigenvalues")) {
    for (const Json& v : j.at("eigenvalues")) s.eigenvalues.push_back(v.get<double>());
  } else {
    s.eigenvalue_rule = j.value("eigenvalue_rule", std::string("linear"));
  }
  if (j.contains("phi_profile")) {
    const Json& p = j.at("phi_profile");
    if (p.is_string()) {
      s.phi_rule = p.get<std::string>();
    } else {
      s.phi = matrix_from_json(p);
      if (s.phi.rows() != s.d && s.d == 1 && s.phi.cols() == 1) s.phi.transposeInPlace();
    }
  }
  if (j.contains("points")) {
    s.points.clear();
    for (const Json& z : j.at("points")) s.points.push_back(complex_from_json(z));
  }
  if (j.contains("offset_E")) s.offset = matrix_from_json(j.at("offset_E"));
  if (j.contains("probe_z")) s.probe = complex_from_json(j.at("probe_z"));
  s.regular_per_sigma = j.value("regular_per_sigma", Index{2});
  return s;
}

inline Json to_json(const ModelSpec& s, std::optional<Index> n = std::nullopt) {
  Json j;
  if (n) j["N"] = *n;
  if (!s.eigenvalues.empty())
    j["eigenvalues"] = s.eigenvalues;
  else
    j["eigenvalue_rule"] = s.eigenvalue_rule;
  j["phi_profile"] = s.phi.size() ? matrix_to_json(s.phi) : Json(s.phi_rule);
  j["d"] = s.d;
  Json pts = Json::array();
  for (Complex z : s.points) pts.push_back(to_json(z));
  j["points"] = std::move(pts);
  j["offset_E"] = matrix_to_json(s.offset.size() ? s.offset : ComplexMatrix::Zero(s.d, s.d));
  j["probe_z"] = to_json(s.probe);
  j["regular_per_sigma"] = s.regular_per_sigma;
  return j;
}

/// Minimal CSV writer with 17-digit numbers.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  std::string header() const { return join(columns_); }

  static std::string cell(double x) { return fmt17(x); }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  static std::string cell(Index i) { return std::to_string(i); }
  static std::string cell(const std::optional<double>& x) { return x ? fmt17(*x) : ""; }

  static std::string join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    return out;
  }

 private:
  std::vector<std::string> columns_;
};

}  // namespace krel
