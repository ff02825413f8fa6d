// Copyright 2026 The Naimark Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "naimark/continuous.hpp"
#include "naimark/joint.hpp"

namespace naimark::io {

using Json = nlohmann::ordered_json;

/// Malformed text or a document that does not follow the schema.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// {"e0", "ex", "ey", "ez"}.
Json effect_to_json(const PauliVector &v);
PauliVector effect_from_json(const Json &j);

/// {"effects": [effect, ...]}. Effects are written from their Pauli form.
Json povm_to_json(const DiscretePovm &p);
DiscretePovm povm_from_json(const Json &j);

/// {"m": [...], "rows": [{"c_re", "c_im", "d_re", "d_im"}, ...]}.
Json dilation_to_json(const NaimarkDilation &d);
NaimarkDilation dilation_from_json(const Json &j);

/// {"grid": [[effect, ...], ...]}.
Json grid_to_json(const JointPovm &g);
JointPovm grid_from_json(const Json &j);

/// Parses text, throwing ParseError on any syntax error.
Json parse(std::string_view text);
/// Reads and parses a file; unreadable files are reported as ParseError.
Json read_file(const std::string &path);

/// Coefficient list of a polynomial: [{"x": a, "y": b, "re": ..., "im": ...}]
/// for nonzero coefficients in (a, b) order.
Json poly_to_json(const continuous::Poly &p);
Json ovm_to_json(const continuous::GaussianPolyOvm &o);
Json positivity_to_json(const continuous::PositivityReport &r);

/// Comma-separated rows with a header line; every line ends in '\n'.
std::string csv(const std::vector<std::string> &header,
                const std::vector<std::vector<std::string>> &rows);

}  // namespace naimark::io
