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

#include "naimark/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace naimark::io {

namespace {

double number_field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    const Json &v = j.at(key);
    if (!v.is_number()) {
        throw ParseError(std::string("field \"") + key + "\" must be a number");
    }
    return v.get<double>();
}

const Json &array_field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
        throw ParseError(std::string("missing array field \"") + key + "\"");
    }
    return j.at(key);
}

/// Grid entries carry rounding in their anti-Hermitian part.
constexpr double kDecomposeTol = 1e-9;

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

Json effect_to_json(const PauliVector &v) {
    Json j;
    // Adding 0.0 maps -0.0 to 0.0.
    j["e0"] = v.e0 + 0.0;
    j["ex"] = v.e[0] + 0.0;
    j["ey"] = v.e[1] + 0.0;
    j["ez"] = v.e[2] + 0.0;
    return j;
}

PauliVector effect_from_json(const Json &j) {
    return {number_field(j, "e0"),
            {number_field(j, "ex"), number_field(j, "ey"), number_field(j, "ez")}};
}

Json povm_to_json(const DiscretePovm &p) {
    Json effects = Json::array();
    for (const Matrix2 &e : p.effects) {
        effects.push_back(effect_to_json(pauli_decompose(e, kDecomposeTol)));
    }
    return Json{{"effects", effects}};
}

DiscretePovm povm_from_json(const Json &j) {
    std::vector<PauliVector> vs;
    for (const Json &e : array_field(j, "effects")) {
        vs.push_back(effect_from_json(e));
    }
    return DiscretePovm::from_pauli(vs);
}

Json dilation_to_json(const NaimarkDilation &d) {
    Json rows = Json::array();
    for (const CdPair &r : d.rows()) {
        Json row;
        row["c_re"] = r.c.real();
        row["c_im"] = r.c.imag();
        row["d_re"] = r.d.real();
        row["d_im"] = r.d.imag();
        rows.push_back(row);
    }
    Json j;
    j["m"] = d.multiplicity().m;
    j["rows"] = rows;
    return j;
}

NaimarkDilation dilation_from_json(const Json &j) {
    MultiplicityVector m;
    for (const Json &v : array_field(j, "m")) {
        if (!v.is_number_integer()) {
            throw ParseError("entries of \"m\" must be integers");
        }
        m.m.push_back(v.get<int>());
    }
    std::vector<CdPair> rows;
    for (const Json &r : array_field(j, "rows")) {
        rows.push_back({{number_field(r, "c_re"), number_field(r, "c_im")},
                        {number_field(r, "d_re"), number_field(r, "d_im")}});
    }
    try {
        return NaimarkDilation(std::move(m), std::move(rows));
    } catch (const std::invalid_argument &e) {
        throw ParseError(e.what());
    }
}

Json grid_to_json(const JointPovm &g) {
    Json grid = Json::array();
    for (const auto &row : g.grid) {
        Json r = Json::array();
        for (const Matrix2 &e : row) {
            r.push_back(effect_to_json(pauli_decompose(e, kDecomposeTol)));
        }
        grid.push_back(r);
    }
    return Json{{"grid", grid}};
}

JointPovm grid_from_json(const Json &j) {
    JointPovm g;
    for (const Json &row : array_field(j, "grid")) {
        if (!row.is_array()) {
            throw ParseError("grid rows must be arrays");
        }
        std::vector<Matrix2> r;
        for (const Json &e : row) {
            r.push_back(pauli_compose(effect_from_json(e)));
        }
        if (!g.grid.empty() && r.size() != g.grid.front().size()) {
            throw ParseError("grid rows differ in length");
        }
        g.grid.push_back(std::move(r));
    }
    return g;
}

Json parse(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(e.what());
    }
}

Json read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Json poly_to_json(const continuous::Poly &p) {
    Json out = Json::array();
    for (int a = 0; a <= continuous::Poly::kMaxDegree; ++a) {
        for (int b = 0; a + b <= continuous::Poly::kMaxDegree; ++b) {
            const Complex c = p.coeff(a, b);
            if (c == Complex{}) {
                continue;
            }
            Json t;
            t["x"] = a;
            t["y"] = b;
            t["re"] = c.real();
            t["im"] = c.imag();
            out.push_back(t);
        }
    }
    return out;
}

Json ovm_to_json(const continuous::GaussianPolyOvm &o) {
    Json vars = Json::array();
    if (o.has_x) {
        vars.push_back("x");
    }
    if (o.has_y) {
        vars.push_back("y");
    }
    Json labels = Json::array();
    for (size_t i = 0; i < o.size(); ++i) {
        const continuous::PolyMatrix &m = o.densities[i];
        Json l;
        l["label"] = o.labels[i];
        l["a00"] = poly_to_json(m.a00);
        l["a01"] = poly_to_json(m.a01);
        l["a10"] = poly_to_json(m.a10);
        l["a11"] = poly_to_json(m.a11);
        labels.push_back(l);
    }
    Json j;
    j["variables"] = vars;
    j["densities"] = labels;
    return j;
}

Json positivity_to_json(const continuous::PositivityReport &r) {
    Json j;
    j["positive"] = r.positive;
    if (std::isfinite(r.min_determinant)) {
        j["min_determinant"] = r.min_determinant;
    } else {
        j["min_determinant"] = r.min_determinant < 0 ? "-inf" : "inf";
    }
    if (!r.positive) {
        j["label"] = *r.label;
        j["quantity"] = r.quantity;
        j["witness"] = {r.witness[0], r.witness[1]};
        j["value"] = r.value;
    }
    return j;
}

std::string csv(const std::vector<std::string> &header,
                const std::vector<std::vector<std::string>> &rows) {
    std::string out;
    auto line = [&out](const std::vector<std::string> &cells) {
        for (size_t k = 0; k < cells.size(); ++k) {
            if (k > 0) {
                out += ',';
            }
            out += cells[k];
        }
        out += '\n';
    };
    line(header);
    for (const auto &r : rows) {
        line(r);
    }
    return out;
}

}  // namespace naimark::io
