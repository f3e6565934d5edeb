#include "heatsum/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "heatsum/cyclotomic.hpp"

namespace heatsum {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw SpecError("json: " + msg); }

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    fail("malformed document");
  }
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Rational rational_from(const json& v, const std::string& what) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      fail(what + ": " + e.what());
    }
  }
  if (v.is_number_integer()) {
    return Rational(static_cast<long>(v.get<std::int64_t>()));
  }
  fail(what + ": expected a rational string or an integer");
}

std::string rational_text(const Rational& r) { return r.str(); }

Integer integer_from(const json& v, const std::string& what) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      return Integer(s, 10);
    } catch (const std::exception&) {
      fail(what + ": not a decimal integer: '" + s + "'");
    }
  }
  if (v.is_number_integer()) {
    return Integer(static_cast<long>(v.get<std::int64_t>()));
  }
  fail(what + ": expected an integer or a decimal string");
}

std::int64_t int64_from(const json& v, const std::string& what) {
  if (!v.is_number_integer()) {
    fail(what + ": expected an integer");
  }
  return v.get<std::int64_t>();
}

const json& member(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(std::string("missing field '") + key + "'");
  }
  return *it;
}

json kernel_value_to_json(const KernelValue& v) {
  json out;
  if (is_exact_value(v)) {
    const CycloNumber& c = exact_value(v);
    out["mode"] = "exact";
    out["conductor"] = c.conductor();
    json coeffs = json::array();
    for (const Rational& r : c.coeffs()) {
      coeffs.push_back(rational_text(r));
    }
    out["coefficients"] = std::move(coeffs);
    out["text"] = to_string(c);
    const auto approx = c.to_complex();
    out["approx"] = {{"re", approx.real()}, {"im", approx.imag()}};
  } else {
    const FloatComplex c = float_value(v);
    out["mode"] = "float";
    out["re"] = c.real();
    out["im"] = c.imag();
  }
  return out;
}

KernelValue kernel_value_from_json(const json& doc) {
  const std::string mode = member(doc, "mode").get<std::string>();
  if (mode == "float") {
    return FloatComplex(member(doc, "re").get<double>(), member(doc, "im").get<double>());
  }
  if (mode != "exact") {
    fail("kernel value: unknown mode '" + mode + "'");
  }
  const std::int64_t conductor = int64_from(member(doc, "conductor"), "conductor");
  if (conductor < 1 || conductor > 0xFFFFFFFFLL) {
    fail("kernel value: conductor out of range");
  }
  const json& coeffs = member(doc, "coefficients");
  if (!coeffs.is_array()) {
    fail("kernel value: coefficients must be an array");
  }
  std::vector<std::pair<std::int64_t, Rational>> terms;
  terms.reserve(coeffs.size());
  std::int64_t k = 0;
  for (const json& c : coeffs) {
    terms.emplace_back(k++, rational_from(c, "coefficient"));
  }
  return CycloNumber::from_monomials(static_cast<std::uint32_t>(conductor), terms);
}

json int_matrix_to_json(const IntMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols; ++j) {
      row.push_back(a.at(i, j).get_str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix int_matrix_from_json(const json& doc) {
  if (!doc.is_array() || doc.empty()) {
    fail("matrix: expected a non-empty array of rows");
  }
  IntMatrix a;
  a.rows = static_cast<int>(doc.size());
  for (const json& row : doc) {
    if (!row.is_array() || row.empty()) {
      fail("matrix: each row must be a non-empty array");
    }
    if (a.cols == 0) {
      a.cols = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != a.cols) {
      fail("matrix: ragged rows");
    }
    std::vector<Integer> entries;
    entries.reserve(row.size());
    for (const json& e : row) {
      entries.push_back(integer_from(e, "matrix entry"));
    }
    a.entries.push_back(std::move(entries));
  }
  return a;
}

std::string dump(const json& doc, int indent) { return doc.dump(indent); }

}  // namespace

TorusSpec parse_torus_spec(const std::string& json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object()) {
    fail("spec: expected an object");
  }

  TorusSpec spec;
  spec.d = static_cast<int>(int64_from(member(doc, "d"), "d"));

  const json& mj = member(doc, "m");
  if (!mj.is_array()) {
    fail("spec: 'm' must be an array");
  }
  for (const json& v : mj) {
    spec.m.push_back(int64_from(v, "m entry"));
  }

  const json& steps = member(doc, "steps");
  if (!steps.is_array()) {
    fail("spec: 'steps' must be an array");
  }
  for (const json& sj : steps) {
    if (!sj.is_object()) {
      fail("spec: each step must be an object");
    }
    Step step;
    const json& off = member(sj, "offset");
    if (!off.is_array()) {
      fail("spec: step offset must be an array");
    }
    for (const json& v : off) {
      step.offset.push_back(int64_from(v, "offset entry"));
    }
    step.weight = rational_from(member(sj, "weight"), "step weight");
    spec.steps.steps.push_back(std::move(step));
  }

  std::string mode = "exact";
  if (const auto it = doc.find("mode"); it != doc.end()) {
    mode = it->get<std::string>();
  }
  if (mode == "exact") {
    spec.mode = NumericMode::exact;
  } else if (mode == "float") {
    spec.mode = NumericMode::floating;
  } else {
    fail("spec: mode must be \"exact\" or \"float\"");
  }

  const auto beta_it = doc.find("beta");
  if (spec.mode == NumericMode::exact) {
    if (beta_it == doc.end()) {
      spec.beta.assign(static_cast<std::size_t>(spec.d), Rational(0));
    } else {
      if (!beta_it->is_array()) {
        fail("spec: 'beta' must be an array");
      }
      for (const json& v : *beta_it) {
        if (v.is_number_float()) {
          fail("beta: exact mode needs a rational string, not a float");
        }
        spec.beta.push_back(rational_from(v, "beta entry"));
      }
    }
  } else {
    if (beta_it == doc.end()) {
      spec.beta_f.assign(static_cast<std::size_t>(spec.d), 0.0);
    } else {
      if (!beta_it->is_array()) {
        fail("spec: 'beta' must be an array");
      }
      for (const json& v : *beta_it) {
        if (v.is_number()) {
          spec.beta_f.push_back(v.get<double>());
        } else {
          spec.beta_f.push_back(rational_from(v, "beta entry").to_double());
        }
      }
    }
  }

  const ValidationReport report = validate_spec(spec);
  if (!report.valid) {
    throw SpecError(report);
  }
  return spec;
}

TorusSpec load_torus_spec(const std::string& path) { return parse_torus_spec(read_file(path)); }

std::string serialize_torus_spec(const TorusSpec& spec, int indent) {
  json doc;
  doc["d"] = spec.d;
  doc["m"] = spec.m;
  json steps = json::array();
  for (const Step& s : spec.steps.steps) {
    steps.push_back({{"offset", s.offset}, {"weight", rational_text(s.weight)}});
  }
  doc["steps"] = std::move(steps);
  if (spec.mode == NumericMode::exact) {
    doc["mode"] = "exact";
    json beta = json::array();
    for (const Rational& b : spec.beta) {
      beta.push_back(rational_text(b));
    }
    doc["beta"] = std::move(beta);
  } else {
    doc["mode"] = "float";
    doc["beta"] = spec.beta_f;
  }
  return dump(doc, indent);
}

std::string serialize_kernel_value(const KernelValue& v, int indent) {
  return dump(kernel_value_to_json(v), indent);
}

KernelValue parse_kernel_value(const std::string& json_text) {
  return kernel_value_from_json(parse_document(json_text));
}

std::string serialize_int_matrix(const IntMatrix& a, int indent) {
  return dump(int_matrix_to_json(a), indent);
}

IntMatrix parse_int_matrix(const std::string& json_text) {
  return int_matrix_from_json(parse_document(json_text));
}

IntMatrix load_int_matrix(const std::string& path) { return parse_int_matrix(read_file(path)); }

std::string serialize_snf_result(const SnfResult& s, int indent) {
  json doc;
  doc["U"] = int_matrix_to_json(s.u);
  doc["D"] = int_matrix_to_json(s.d);
  doc["V"] = int_matrix_to_json(s.v);
  json factors = json::array();
  for (const Integer& q : invariant_factors(s)) {
    factors.push_back(q.get_str());
  }
  doc["invariant_factors"] = std::move(factors);
  return dump(doc, indent);
}

SnfResult parse_snf_result(const std::string& json_text) {
  const json doc = parse_document(json_text);
  SnfResult s;
  s.u = int_matrix_from_json(member(doc, "U"));
  s.d = int_matrix_from_json(member(doc, "D"));
  s.v = int_matrix_from_json(member(doc, "V"));
  return s;
}

std::string serialize_distribution(const EmpiricalDistribution& dist, int indent) {
  json doc;
  doc["walks"] = dist.walks;
  doc["counts"] = dist.counts;
  json freq = json::array();
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    freq.push_back(dist.frequency(i));
  }
  doc["frequencies"] = std::move(freq);
  return dump(doc, indent);
}

EmpiricalDistribution parse_distribution(const std::string& json_text) {
  const json doc = parse_document(json_text);
  EmpiricalDistribution dist;
  dist.walks = int64_from(member(doc, "walks"), "walks");
  for (const json& c : member(doc, "counts")) {
    dist.counts.push_back(int64_from(c, "count"));
  }
  return dist;
}

std::string serialize_comparison_report(const ComparisonReport& report, int indent) {
  json doc;
  doc["walks"] = report.walks;
  doc["horizon"] = report.horizon;
  doc["pass"] = report.pass;
  doc["flagged"] = report.flagged_count;
  json rows = json::array();
  for (const ResidueComparison& row : report.rows) {
    rows.push_back({{"residue", row.residue},
                    {"empirical", row.empirical},
                    {"exact", row.exact},
                    {"exact_text", row.exact_text},
                    {"deviation", row.deviation},
                    {"bound", row.bound},
                    {"flagged", row.flagged}});
  }
  doc["rows"] = std::move(rows);
  return dump(doc, indent);
}

ComparisonReport parse_comparison_report(const std::string& json_text) {
  const json doc = parse_document(json_text);
  ComparisonReport report;
  report.walks = int64_from(member(doc, "walks"), "walks");
  report.horizon = int64_from(member(doc, "horizon"), "horizon");
  report.pass = member(doc, "pass").get<bool>();
  report.flagged_count = static_cast<int>(int64_from(member(doc, "flagged"), "flagged"));
  for (const json& rj : member(doc, "rows")) {
    ResidueComparison row;
    for (const json& v : member(rj, "residue")) {
      row.residue.push_back(int64_from(v, "residue entry"));
    }
    row.empirical = member(rj, "empirical").get<double>();
    row.exact = member(rj, "exact").get<double>();
    row.exact_text = member(rj, "exact_text").get<std::string>();
    row.deviation = member(rj, "deviation").get<double>();
    row.bound = member(rj, "bound").get<double>();
    row.flagged = member(rj, "flagged").get<bool>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace heatsum
