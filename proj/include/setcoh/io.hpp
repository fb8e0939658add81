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

// JSON documents (schema "setcoh/1"). Matrices are row-major arrays of rows,
// each entry a [re, im] pair. In exact inputs an entry component may also be
// an integer or a "p/q" string.
//
//   {"schema": "setcoh/1", "kind": "states", "dim": 2,
//    "payload": [[[[1, 0], [0, 0]], [[0, 0], [0, 0]]], ...],
//    "labels": ["zero", ...]}
//
// kind "povm" has one matrix per outcome, "assemblage" one array of matrices
// per setting, "bloch-config" one [x, y, z] per state, and "frame" a single
// matrix.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "setcoh/configs.hpp"
#include "setcoh/core.hpp"
#include "setcoh/projective.hpp"

namespace setcoh::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "setcoh/1";

struct InputDocument {
  std::string kind;
  int dim = 0;
  Json payload;
  std::vector<std::string> labels;
};

// Parses text; syntax errors become kMalformedInput with line and column.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

// Checks the envelope (schema, kind, dim, payload, labels).
InputDocument parse_input(const Json& doc);

// Field-level conversions; `where` names the field in error messages.
ComplexMatrix matrix_from_json(const Json& m, int dim, const std::string& where);
Json matrix_to_json(const ComplexMatrix& m);
Rational rational_from_json(const Json& v, const std::string& where);
std::string rational_to_string(const Rational& r);

// Typed views of a document; the quantum-core constructors validate them.
StateSet states_from(const InputDocument& doc);
Povm povm_from(const InputDocument& doc);
MeasurementAssemblage assemblage_from(const InputDocument& doc);
SphereConfig config_from(const InputDocument& doc);
// Accepts a kind "frame" document or any result document with a "frame".
UnitaryFrame frame_from(const Json& doc);
// Diagonal of an exact POVM document as a d x n matrix; off-diagonal entries
// must be exactly zero.
StochasticMatrix<Rational> exact_diagonal_from(const InputDocument& doc);

Json envelope(const std::string& kind, int dim);

}  // namespace setcoh::io
