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

#ifndef OPTIQ_SERIALIZE_HPP
#define OPTIQ_SERIALIZE_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "optiq/approx.hpp"
#include "optiq/circuit.hpp"
#include "optiq/fock.hpp"
#include "optiq/lie.hpp"
#include "optiq/matrix.hpp"

namespace optiq {

using Json = nlohmann::json;

inline constexpr int kImageBasisFormatVersion = 1;

/// { "dim": d, "entries": [[[re, im], ...], ...] }, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// { "m": m, "n": n, "states": [[...], ...] }
Json basis_to_json(const FockBasis& basis);
FockBasis basis_from_json(const Json& j);

Json image_basis_to_json(const ImageBasis& image);
ImageBasis image_basis_from_json(const Json& j);

/// [{ "kind", "modes", "theta", "phi" }, ...] plus "residual_phases".
Json plan_to_json(const CircuitPlan& plan);
CircuitPlan plan_from_json(const Json& j);

Json trace_to_json(const std::vector<IterationRecord>& trace);

/**
 * Parses a matrix from text: JSON in the matrix schema, or whitespace
 * separated complex literals ("0.5", "-i", "0.3-0.2i", "1e-3+2i"), one row
 * per line. Blank lines and lines starting with '#' are skipped.
 */
Matrix parse_matrix(const std::string& text);
Matrix read_matrix_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Parses one complex literal; throws ErrorKind::parse.
Complex parse_complex(const std::string& token);

/// Cached image basis for `basis` under `cache_dir`, built and stored on a miss.
/// A file whose header does not match the basis is rebuilt.
ImageBasis load_or_build_image_basis(const FockBasis& basis,
                                     const std::optional<std::filesystem::path>& cache_dir);

} // namespace optiq

#endif
