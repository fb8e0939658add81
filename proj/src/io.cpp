// Copyright 2026 The setcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "setcoh/io.hpp"

#include <fstream>
#include <sstream>

namespace setcoh::io {

namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, where + ": " + what);
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) malformed(name, "missing field");
  return doc.at(name);
}

std::string at(const std::string& where, size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

const Json& array_of_size(const Json& v, const std::string& where, size_t size) {
  if (!v.is_array()) malformed(where, "expected an array");
  if (size != 0 && v.size() != size) {
    malformed(where, "expected " + std::to_string(size) + " entries, got " +
                         std::to_string(v.size()));
  }
  return v;
}

double number_from_json(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return rational_from_json(v, where).convert_to<double>();
  malformed(where, "expected a number or a \"p/q\" string");
}

boost::multiprecision::cpp_int parse_integer(const std::string& s, const std::string& where) {
  size_t k = 0;
  if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
  if (k == s.size()) malformed(where, "empty integer in \"" + s + "\"");
  for (size_t i = k; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') malformed(where, "bad integer \"" + s + "\"");
  }
  return boost::multiprecision::cpp_int(s);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<Json> matrices(const InputDocument& doc) {
  std::vector<Json> out;
  const Json& p = array_of_size(doc.payload, "payload", 0);
  if (p.empty()) malformed("payload", "empty");
  for (const auto& m : p) out.push_back(m);
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into line and column.
    const size_t pos = std::min<size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    size_t line = 1;
    size_t col = 1;
    for (size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kMalformedInput, "line " + std::to_string(line) + ", column " +
                                                std::to_string(col) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

InputDocument parse_input(const Json& doc) {
  if (!doc.is_object()) malformed("document", "expected an object");
  InputDocument out;
  if (doc.contains("schema") && doc.at("schema") != kSchema) {
    malformed("schema", "unsupported schema, expected \"setcoh/1\"");
  }
  const Json& kind = field(doc, "kind");
  if (!kind.is_string()) malformed("kind", "expected a string");
  out.kind = kind.get<std::string>();
  if (out.kind != "states" && out.kind != "povm" && out.kind != "assemblage" &&
      out.kind != "bloch-config" && out.kind != "frame") {
    malformed("kind", "unknown kind \"" + out.kind + "\"");
  }
  const Json& dim = field(doc, "dim");
  if (!dim.is_number_integer() || dim.get<int>() < 1) malformed("dim", "expected a positive integer");
  out.dim = dim.get<int>();
  out.payload = field(doc, "payload");
  if (doc.contains("labels")) {
    const Json& labels = array_of_size(doc.at("labels"), "labels", 0);
    for (size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i].is_string()) malformed(at("labels", i), "expected a string");
      out.labels.push_back(labels[i].get<std::string>());
    }
  }
  return out;
}

ComplexMatrix matrix_from_json(const Json& m, int dim, const std::string& where) {
  array_of_size(m, where, dim);
  ComplexMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const std::string row_where = at(where, i);
    const Json& row = array_of_size(m[i], row_where, dim);
    for (int j = 0; j < dim; ++j) {
      const std::string entry_where = at(row_where, j);
      const Json& e = row[j];
      if (e.is_array()) {
        array_of_size(e, entry_where, 2);
        out(i, j) = Complex(number_from_json(e[0], entry_where + "[0]"),
                            number_from_json(e[1], entry_where + "[1]"));
      } else {
        out(i, j) = Complex(number_from_json(e, entry_where), 0.0);
      }
    }
  }
  return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational rational_from_json(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) return Rational(v.get<double>());
  if (!v.is_string()) malformed(where, "expected an integer or a \"p/q\" string");
  const std::string s = trim(v.get<std::string>());
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s, where));
  const auto num = parse_integer(trim(s.substr(0, slash)), where);
  const auto den = parse_integer(trim(s.substr(slash + 1)), where);
  if (den == 0) malformed(where, "zero denominator");
  return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

StateSet states_from(const InputDocument& doc) {
  if (doc.kind == "bloch-config") return config_from(doc).states();
  if (doc.kind != "states") malformed("kind", "expected states, got " + doc.kind);
  std::vector<DensityMatrix> states;
  const auto ms = matrices(doc);
  for (size_t k = 0; k < ms.size(); ++k) {
    states.emplace_back(matrix_from_json(ms[k], doc.dim, at("payload", k)));
  }
  return StateSet(std::move(states));
}

Povm povm_from(const InputDocument& doc) {
  if (doc.kind != "povm") malformed("kind", "expected povm, got " + doc.kind);
  std::vector<ComplexMatrix> elements;
  const auto ms = matrices(doc);
  for (size_t k = 0; k < ms.size(); ++k) {
    elements.push_back(matrix_from_json(ms[k], doc.dim, at("payload", k)));
  }
  return Povm(elements);
}

MeasurementAssemblage assemblage_from(const InputDocument& doc) {
  if (doc.kind == "povm") return MeasurementAssemblage(povm_from(doc));
  if (doc.kind != "assemblage") malformed("kind", "expected assemblage, got " + doc.kind);
  std::vector<Povm> settings;
  const auto xs = matrices(doc);
  for (size_t x = 0; x < xs.size(); ++x) {
    const std::string where = at("payload", x);
    const Json& outcomes = array_of_size(xs[x], where, 0);
    std::vector<ComplexMatrix> elements;
    for (size_t a = 0; a < outcomes.size(); ++a) {
      elements.push_back(matrix_from_json(outcomes[a], doc.dim, at(where, a)));
    }
    settings.emplace_back(elements);
  }
  return MeasurementAssemblage(std::move(settings));
}

SphereConfig config_from(const InputDocument& doc) {
  if (doc.kind != "bloch-config") malformed("kind", "expected bloch-config, got " + doc.kind);
  if (doc.dim != 2) malformed("dim", "Bloch configurations are qubit states (dim 2)");
  std::vector<Eigen::Vector3d> v;
  const auto ps = matrices(doc);
  for (size_t k = 0; k < ps.size(); ++k) {
    const std::string where = at("payload", k);
    array_of_size(ps[k], where, 3);
    v.emplace_back(number_from_json(ps[k][0], at(where, 0)), number_from_json(ps[k][1], at(where, 1)),
                   number_from_json(ps[k][2], at(where, 2)));
  }
  return SphereConfig(std::move(v));
}

UnitaryFrame frame_from(const Json& doc) {
  if (doc.is_object() && doc.contains("frame")) {
    const Json& m = doc.at("frame");
    if (!m.is_array()) malformed("frame", "expected a matrix");
    return UnitaryFrame(matrix_from_json(m, static_cast<int>(m.size()), "frame"));
  }
  const InputDocument in = parse_input(doc);
  if (in.kind != "frame") malformed("kind", "expected frame, got " + in.kind);
  return UnitaryFrame(matrix_from_json(in.payload, in.dim, "payload"));
}

StochasticMatrix<Rational> exact_diagonal_from(const InputDocument& doc) {
  if (doc.kind != "povm") malformed("kind", "exact mode needs a povm document");
  const auto ms = matrices(doc);
  const int d = doc.dim;
  StochasticMatrix<Rational> out(d, static_cast<int>(ms.size()));
  for (size_t k = 0; k < ms.size(); ++k) {
    const std::string where = at("payload", k);
    array_of_size(ms[k], where, d);
    for (int i = 0; i < d; ++i) {
      const std::string row_where = at(where, i);
      const Json& row = array_of_size(ms[k][i], row_where, d);
      for (int j = 0; j < d; ++j) {
        const std::string entry_where = at(row_where, j);
        const Json& e = row[j];
        Rational re;
        Rational im(0);
        if (e.is_array()) {
          array_of_size(e, entry_where, 2);
          re = rational_from_json(e[0], entry_where + "[0]");
          im = rational_from_json(e[1], entry_where + "[1]");
        } else {
          re = rational_from_json(e, entry_where);
        }
        if (im != 0 || (i != j && re != 0)) {
          throw Error(ErrorCode::kNotIncoherent,
                      entry_where + ": exact mode needs diagonal elements");
        }
        if (i == j) out(i, static_cast<int>(k)) = re;
      }
    }
  }
  return out;
}

Json envelope(const std::string& kind, int dim) {
  Json out;
  out["schema"] = kSchema;
  out["kind"] = kind;
  out["dim"] = dim;
  return out;
}

}  // namespace setcoh::io
