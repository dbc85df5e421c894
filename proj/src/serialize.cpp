/*
 * Copyright 2026 The optiq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "optiq/serialize.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "optiq/error.hpp"

namespace optiq {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
    throw Error(ErrorKind::parse, what);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) parse_error(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

double number(const Json& v, const char* what) {
    if (!v.is_number()) parse_error(std::string(what) + " must be a number");
    return v.get<double>();
}

std::vector<FockState> states_from_json(const Json& j) {
    if (!j.is_array()) parse_error("\"states\" must be an array");
    std::vector<FockState> states;
    for (const Json& s : j) {
        if (!s.is_array()) parse_error("each state must be an array of occupations");
        FockState state;
        for (const Json& k : s) {
            if (!k.is_number_integer()) parse_error("occupations must be integers");
            state.occupations.push_back(k.get<int>());
        }
        states.push_back(std::move(state));
    }
    return states;
}

std::string ordering_name(BasisOrdering ordering) {
    return ordering == BasisOrdering::lexicographic_descending ? "lexicographic-descending"
                                                               : "explicit";
}

std::uint64_t fnv1a(const FockBasis& basis) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const FockState& s : basis.states()) {
        for (int k : s.occupations) {
            h ^= static_cast<std::uint64_t>(k) + 1;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double parse_real(std::string_view text, const std::string& token) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        parse_error("invalid complex literal \"" + token + "\"");
    }
    return value;
}

} // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return Json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j) {
    const int dim = int_field(j, "dim");
    const Json& entries = field(j, "entries");
    if (dim < 1) parse_error("\"dim\" must be positive");
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim)) {
        throw Error(ErrorKind::shape, "matrix \"entries\" must have " + std::to_string(dim) + " rows");
    }
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const Json& row = entries[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
            throw Error(ErrorKind::shape, "matrix row " + std::to_string(r) + " must have " +
                                              std::to_string(dim) + " entries");
        }
        for (int c = 0; c < dim; ++c) {
            const Json& z = row[static_cast<std::size_t>(c)];
            if (!z.is_array() || z.size() != 2) parse_error("matrix entries must be [re, im] pairs");
            m(r, c) = Complex(number(z[0], "real part"), number(z[1], "imaginary part"));
        }
    }
    return m;
}

Json basis_to_json(const FockBasis& basis) {
    Json states = Json::array();
    for (const FockState& s : basis.states()) states.push_back(s.occupations);
    return Json{{"m", basis.modes()}, {"n", basis.photons()}, {"states", std::move(states)}};
}

FockBasis basis_from_json(const Json& j) {
    const int m = int_field(j, "m");
    const int n = int_field(j, "n");
    std::vector<FockState> states = states_from_json(field(j, "states"));
    FockBasis canonical = FockBasis::enumerate(m, n);
    if (canonical.states() == states) return canonical;
    return FockBasis::from_list(m, n, std::move(states));
}

Json image_basis_to_json(const ImageBasis& image) {
    Json elements = Json::array();
    Json preimages = Json::array();
    for (const AlgebraElement& b : image.elements()) elements.push_back(matrix_to_json(b.matrix()));
    for (const AlgebraElement& g : image.preimages()) preimages.push_back(matrix_to_json(g.matrix()));
    Json out = basis_to_json(image.fock_basis());
    out["format_version"] = kImageBasisFormatVersion;
    out["ordering"] = ordering_name(image.fock_basis().ordering());
    out["elements"] = std::move(elements);
    out["preimages"] = std::move(preimages);
    return out;
}

ImageBasis image_basis_from_json(const Json& j) {
    if (int_field(j, "format_version") != kImageBasisFormatVersion) {
        parse_error("unsupported image basis format version");
    }
    FockBasis basis = basis_from_json(j);
    std::vector<AlgebraElement> elements;
    std::vector<AlgebraElement> preimages;
    for (const Json& e : field(j, "elements")) elements.push_back(AlgebraElement::checked(matrix_from_json(e)));
    for (const Json& g : field(j, "preimages")) preimages.push_back(AlgebraElement::checked(matrix_from_json(g)));
    return ImageBasis(std::move(basis), std::move(elements), std::move(preimages));
}

Json plan_to_json(const CircuitPlan& plan) {
    Json elements = Json::array();
    for (const OpticalElement& e : plan.elements) {
        elements.push_back(Json{
            {"kind", e.kind == ElementKind::beam_splitter ? "beam_splitter" : "phase_shifter"},
            {"modes", e.modes},
            {"theta", e.theta},
            {"phi", e.phi},
        });
    }
    return Json{
        {"m", plan.modes},
        {"convention",
         "beam_splitter on (j,j+1): [[e^{i phi} cos theta, -sin theta], [e^{i phi} sin theta, "
         "cos theta]]; phase_shifter on (j): e^{i phi}; elements in traversal order, then "
         "residual_phases as e^{i r_k} on output mode k"},
        {"elements", std::move(elements)},
        {"residual_phases", plan.residual_phases},
    };
}

CircuitPlan plan_from_json(const Json& j) {
    CircuitPlan plan;
    plan.modes = int_field(j, "m");
    const Json& elements = field(j, "elements");
    if (!elements.is_array()) parse_error("\"elements\" must be an array");
    for (const Json& e : elements) {
        OpticalElement element;
        const Json& kind = field(e, "kind");
        if (kind == "beam_splitter") {
            element.kind = ElementKind::beam_splitter;
        } else if (kind == "phase_shifter") {
            element.kind = ElementKind::phase_shifter;
        } else {
            throw Error(ErrorKind::malformed_plan, "unknown element kind " + kind.dump());
        }
        for (const Json& k : field(e, "modes")) {
            if (!k.is_number_integer()) parse_error("element modes must be integers");
            element.modes.push_back(k.get<int>());
        }
        element.theta = e.contains("theta") ? number(e.at("theta"), "theta") : 0.0;
        element.phi = number(field(e, "phi"), "phi");
        plan.elements.push_back(std::move(element));
    }
    for (const Json& p : field(j, "residual_phases")) plan.residual_phases.push_back(number(p, "residual phase"));
    return plan;
}

Json trace_to_json(const std::vector<IterationRecord>& trace) {
    Json out = Json::array();
    for (const IterationRecord& r : trace) {
        out.push_back(Json{{"step", r.step},
                           {"distance", r.distance},
                           {"geodesic_distance", r.geodesic_distance},
                           {"tangent_norm", r.tangent_norm},
                           {"normal_norm", r.normal_norm}});
    }
    return out;
}

Complex parse_complex(const std::string& token) {
    if (token.empty()) parse_error("empty complex literal");
    const char last = token.back();
    if (last != 'i' && last != 'j') return Complex(parse_real(token, token), 0.0);

    const std::string_view body(token.data(), token.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string_view real_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view imag_part = split == std::string_view::npos ? body : body.substr(split);
    double imag = 0.0;
    if (imag_part.empty() || imag_part == "+") {
        imag = 1.0;
    } else if (imag_part == "-") {
        imag = -1.0;
    } else {
        imag = parse_real(imag_part, token);
    }
    const double real = real_part.empty() ? 0.0 : parse_real(real_part, token);
    return Complex(real, imag);
}

Matrix parse_matrix(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) parse_error("matrix input is empty");
    if (text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            parse_error(std::string("malformed JSON: ") + e.what());
        }
        return matrix_from_json(j);
    }

    std::vector<std::vector<Complex>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream tokens(line);
        std::vector<Complex> row;
        for (std::string token; tokens >> token;) row.push_back(parse_complex(token));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::shape, "text matrix has no rows");
    const auto dim = static_cast<Index>(rows.size());
    Matrix m(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (static_cast<Index>(row.size()) != dim) {
            throw Error(ErrorKind::shape, "text matrix row " + std::to_string(r) + " has " +
                                              std::to_string(row.size()) + " entries, expected " +
                                              std::to_string(dim));
        }
        for (Index c = 0; c < dim; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

Matrix read_matrix_file(const std::filesystem::path& path) {
    return parse_matrix(read_text_file(path));
}

ImageBasis load_or_build_image_basis(const FockBasis& basis,
                                     const std::optional<std::filesystem::path>& cache_dir) {
    if (!cache_dir) return build_image_basis(basis);

    std::ostringstream name;
    name << "image_basis_m" << basis.modes() << "_n" << basis.photons() << '_';
    if (basis.ordering() == BasisOrdering::lexicographic_descending) {
        name << "lex";
    } else {
        name << "explicit-" << std::hex << fnv1a(basis);
    }
    name << ".json";
    const std::filesystem::path file = *cache_dir / name.str();

    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
        try {
            ImageBasis cached = image_basis_from_json(Json::parse(read_text_file(file)));
            if (cached.fock_basis() == basis) {
                cached.validate();
                return cached;
            }
        } catch (const std::exception&) {
            // Stale or corrupt cache entries are rebuilt below.
        }
    }

    ImageBasis built = build_image_basis(basis);
    std::filesystem::create_directories(*cache_dir, ec);
    const std::filesystem::path tmp = file.string() + ".tmp";
    try {
        write_text_file(tmp, image_basis_to_json(built).dump());
        std::filesystem::rename(tmp, file, ec);
    } catch (const Error&) {
        // An unwritable cache directory only costs a rebuild next time.
    }
    return built;
}

} // namespace optiq
