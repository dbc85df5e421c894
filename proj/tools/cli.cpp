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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "optiq/approx.hpp"
#include "optiq/circuit.hpp"
#include "optiq/error.hpp"
#include "optiq/fock.hpp"
#include "optiq/homomorphism.hpp"
#include "optiq/lie.hpp"
#include "optiq/serialize.hpp"

namespace optiq::cli {

namespace {

constexpr int kReportFormatVersion = 1;
constexpr double kReplayTolerance = 1e-9;

struct RunConfig {
    int modes = 0;
    int photons = 0;
    std::string ordering = "lex";
    double tol = 1e-10;
    int max_iter = 200;
    int starts = 1;
    std::uint64_t seed = 0;
    double cluster_tol = 1e-4;
    std::string branch = "upper";
    int reunitarize_every = 25;
    bool trace = false;
    unsigned threads = 0;
    std::size_t max_dimension = kDefaultMaxDimension;
    std::string output;
};

std::vector<FockState> states_from_list(const Json& list) {
    std::vector<FockState> states;
    for (const Json& s : list) states.push_back(FockState{s.get<std::vector<int>>()});
    return states;
}

FockBasis resolve_basis(int modes, int photons, const std::string& ordering,
                        std::size_t max_dimension) {
    if (ordering == "lex" || ordering == "lexicographic-descending") {
        return FockBasis::enumerate(modes, photons, max_dimension);
    }
    if (ordering == "reference") {
        if (modes != 2 || photons != 2) {
            throw Error(ErrorKind::invalid_ordering, "ordering \"reference\" exists only for m=n=2");
        }
        return FockBasis::two_mode_two_photon_reference();
    }
    if (!ordering.empty() && ordering.front() == '@') {
        const Json j = Json::parse(read_text_file(ordering.substr(1)));
        const Json& list = j.is_object() ? j.at("states") : j;
        if (j.is_object() && (j.at("m") != modes || j.at("n") != photons)) {
            throw Error(ErrorKind::invalid_ordering, "ordering file is for a different (m, n)");
        }
        return FockBasis::from_list(modes, photons, states_from_list(list), max_dimension);
    }
    throw Error(ErrorKind::invalid_ordering,
                "unknown ordering \"" + ordering + "\" (use lex, reference or @file)");
}

BranchCut parse_branch(const std::string& name) {
    if (name == "upper") return BranchCut::upper;
    if (name == "lower") return BranchCut::lower;
    throw Error(ErrorKind::invalid_argument, "branch must be \"upper\" or \"lower\"");
}

std::optional<std::filesystem::path> basis_cache_dir() {
    const char* dir = std::getenv("OPTIQ_BASIS_CACHE");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
    if (output.empty() || output == "-") {
        out << text;
    } else {
        write_text_file(output, text);
    }
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    return read_text_file(path);
}

UnitaryMatrix checked_unitary(const Matrix& m, const std::string& what) {
    try {
        return UnitaryMatrix::checked(m);
    } catch (const Error& e) {
        throw Error(e.kind(), what + ": " + e.what());
    }
}

void validate(const RunConfig& c) {
    if (!(c.tol > 0.0) || !(c.cluster_tol > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "tolerances must be positive");
    }
    if (c.starts < 1) throw Error(ErrorKind::invalid_argument, "--starts must be at least 1");
    if (c.max_iter < 1) throw Error(ErrorKind::invalid_argument, "--max-iter must be at least 1");
}

Json config_to_json(const RunConfig& c, const FockBasis& basis) {
    return Json{
        {"modes", c.modes},
        {"photons", c.photons},
        {"ordering", Json{{"name", c.ordering}, {"states", basis_to_json(basis)["states"]}}},
        {"tol", c.tol},
        {"max_iter", c.max_iter},
        {"starts", c.starts},
        {"seed", c.seed},
        {"cluster_tol", c.cluster_tol},
        {"branch", c.branch},
        {"reunitarize_every", c.reunitarize_every},
        {"trace", c.trace},
    };
}

struct Experiment {
    FockBasis basis;
    UnitaryMatrix target;
    std::vector<Cluster> clusters;
};

std::vector<Cluster> run_clusters(const RunConfig& c, const FockBasis& basis,
                                  const UnitaryMatrix& target) {
    const ImageBasis image = load_or_build_image_basis(basis, basis_cache_dir());
    MultiStartOptions options;
    options.starts = c.starts;
    options.seed = c.seed;
    options.cluster_tol = c.cluster_tol;
    options.threads = c.threads;
    options.approx.tol = c.tol;
    options.approx.max_iter = c.max_iter;
    options.approx.branch = parse_branch(c.branch);
    options.approx.reunitarize_every = c.reunitarize_every;
    return multi_start(target, image, options);
}

Json report_to_json(const RunConfig& c, const FockBasis& basis, const UnitaryMatrix& target,
                    const std::vector<Cluster>& clusters) {
    Json list = Json::array();
    for (const Cluster& cl : clusters) {
        const ApproxResult& r = cl.representative;
        Json entry{
            {"final_distance", r.final_distance},
            {"fidelity_bound", fidelity_bound(r.trace.back().normal_norm)},
            {"hit_count", cl.hit_count},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"S_tilde", matrix_to_json(r.s_tilde.matrix())},
            {"U_tilde", matrix_to_json(r.u_tilde.matrix())},
            {"circuit", plan_to_json(decompose(r.s_tilde))},
        };
        if (c.trace) entry["trace"] = trace_to_json(r.trace);
        list.push_back(std::move(entry));
    }
    return Json{
        {"format_version", kReportFormatVersion},
        {"command", "approximate"},
        {"config", config_to_json(c, basis)},
        {"target", matrix_to_json(target.matrix())},
        {"clusters", std::move(list)},
    };
}

int cmd_approximate(const RunConfig& c, const std::string& target_file, std::ostream& out) {
    validate(c);
    const FockBasis basis = resolve_basis(c.modes, c.photons, c.ordering, c.max_dimension);
    const Matrix raw = read_matrix_file(target_file);
    if (raw.rows() != static_cast<Index>(basis.size())) {
        std::ostringstream os;
        os << "target is " << raw.rows() << "x" << raw.cols() << " but m=" << c.modes
           << ", n=" << c.photons << " needs " << basis.size() << "x" << basis.size();
        throw Error(ErrorKind::shape, os.str());
    }
    const UnitaryMatrix target = checked_unitary(raw, "target");
    const std::vector<Cluster> clusters = run_clusters(c, basis, target);
    emit(report_to_json(c, basis, target, clusters).dump(2) + "\n", c.output, out);
    return kSuccess;
}

int cmd_phi(const RunConfig& c, const std::string& file, std::ostream& out) {
    const Matrix raw = read_matrix_file(file);
    const int modes = c.modes > 0 ? c.modes : static_cast<int>(raw.rows());
    if (raw.rows() != modes) {
        throw Error(ErrorKind::shape, "scattering matrix is " + std::to_string(raw.rows()) +
                                          "x" + std::to_string(raw.cols()) + " but --modes is " +
                                          std::to_string(modes));
    }
    const FockBasis basis = resolve_basis(modes, c.photons, c.ordering, c.max_dimension);
    const UnitaryMatrix s = checked_unitary(raw, "scattering matrix");
    emit(matrix_to_json(phi(s, basis).matrix()).dump(2) + "\n", c.output, out);
    return kSuccess;
}

int cmd_dphi(const RunConfig& c, const std::string& file, std::ostream& out) {
    const Matrix raw = read_matrix_file(file);
    const int modes = c.modes > 0 ? c.modes : static_cast<int>(raw.rows());
    if (raw.rows() != modes) throw Error(ErrorKind::shape, "generator does not match --modes");
    const FockBasis basis = resolve_basis(modes, c.photons, c.ordering, c.max_dimension);
    const AlgebraElement a = AlgebraElement::checked(raw);
    emit(matrix_to_json(dphi(a, basis).matrix()).dump(2) + "\n", c.output, out);
    return kSuccess;
}

int cmd_sample(const RunConfig& c, int count, std::ostream& out) {
    if (c.modes < 1) throw Error(ErrorKind::invalid_argument, "--modes must be at least 1");
    if (count < 1) throw Error(ErrorKind::invalid_argument, "--count must be at least 1");
    if (count == 1) {
        emit(matrix_to_json(haar_random(c.modes, derive_seed(c.seed, 0)).matrix()).dump(2) + "\n",
             c.output, out);
        return kSuccess;
    }
    Json samples = Json::array();
    for (int i = 0; i < count; ++i) {
        samples.push_back(
            matrix_to_json(haar_random(c.modes, derive_seed(c.seed, static_cast<std::uint64_t>(i))).matrix()));
    }
    const Json doc{{"format_version", kReportFormatVersion},
                   {"modes", c.modes},
                   {"seed", c.seed},
                   {"samples", std::move(samples)}};
    emit(doc.dump() + "\n", c.output, out);
    return kSuccess;
}

int cmd_stats(const std::string& file, int bins, double alpha, std::ostream& out) {
    const Json doc = Json::parse(read_input(file));
    std::vector<double> spacings;
    if (doc.contains("samples")) {
        for (const Json& s : doc.at("samples")) {
            spacings.push_back(eigenphase_spacing(checked_unitary(matrix_from_json(s), "sample")));
        }
    } else {
        spacings.push_back(eigenphase_spacing(checked_unitary(matrix_from_json(doc), "sample")));
    }
    const ChiSquareResult r = haar_spacing_test(spacings, bins, alpha);
    const Json result{{"samples", spacings.size()},
                      {"statistic", r.statistic},
                      {"degrees_of_freedom", r.degrees_of_freedom},
                      {"critical_value", r.critical_value},
                      {"p_value", r.p_value},
                      {"passed", r.passed}};
    out << result.dump(2) << "\n";
    return r.passed ? kSuccess : kFailure;
}

int cmd_decompose(const std::string& file, const std::string& output, std::ostream& out) {
    const UnitaryMatrix s = checked_unitary(read_matrix_file(file), "scattering matrix");
    const CircuitPlan plan = decompose(s);
    const double error = distance(reconstruct(plan), s);
    if (!(error < 1e-9)) {
        throw Error(ErrorKind::internal_consistency,
                    "circuit reconstruction misses the input by " + std::to_string(error));
    }
    out << format_plan_table(plan);
    emit(plan_to_json(plan).dump(2) + "\n", output, out);
    return kSuccess;
}

int cmd_replay(const std::string& file, std::ostream& out) {
    const Json report = Json::parse(read_text_file(file));
    if (report.at("format_version") != kReportFormatVersion) {
        throw Error(ErrorKind::parse, "unsupported report format version");
    }
    const Json& cfg = report.at("config");
    RunConfig c;
    c.modes = cfg.at("modes").get<int>();
    c.photons = cfg.at("photons").get<int>();
    c.ordering = cfg.at("ordering").at("name").get<std::string>();
    c.tol = cfg.at("tol").get<double>();
    c.max_iter = cfg.at("max_iter").get<int>();
    c.starts = cfg.at("starts").get<int>();
    c.seed = cfg.at("seed").get<std::uint64_t>();
    c.cluster_tol = cfg.at("cluster_tol").get<double>();
    c.branch = cfg.at("branch").get<std::string>();
    c.reunitarize_every = cfg.at("reunitarize_every").get<int>();
    validate(c);

    const std::vector<FockState> states = states_from_list(cfg.at("ordering").at("states"));
    FockBasis basis = FockBasis::enumerate(c.modes, c.photons, std::max(kDefaultMaxDimension, states.size()));
    if (basis.states() != states) basis = FockBasis::from_list(c.modes, c.photons, states, states.size());
    const UnitaryMatrix target = checked_unitary(matrix_from_json(report.at("target")), "target");

    const std::vector<Cluster> clusters = run_clusters(c, basis, target);
    const Json& recorded = report.at("clusters");
    bool ok = recorded.size() == clusters.size();
    if (!ok) {
        out << "cluster count differs: recorded " << recorded.size() << ", replayed "
            << clusters.size() << "\n";
    }
    for (std::size_t i = 0; ok && i < clusters.size(); ++i) {
        const double want = recorded[i].at("final_distance").get<double>();
        const double got = clusters[i].representative.final_distance;
        const int hits = recorded[i].at("hit_count").get<int>();
        out << "cluster " << i << ": recorded " << want << ", replayed " << got << ", hits "
            << hits << "/" << clusters[i].hit_count << "\n";
        if (!(std::abs(want - got) <= kReplayTolerance) || hits != clusters[i].hit_count) ok = false;
    }
    out << (ok ? "replay OK\n" : "replay MISMATCH\n");
    return ok ? kSuccess : kFailure;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::shape: return kShapeError;
    case ErrorKind::not_unitary:
    case ErrorKind::not_anti_hermitian: return kUnitarityError;
    case ErrorKind::numerical_instability: return kInstabilityError;
    default: return kFailure;
    }
}

void add_basis_flags(CLI::App* sub, RunConfig& c, bool modes_required) {
    auto* modes = sub->add_option("--modes,-m", c.modes, "number of optical modes m");
    if (modes_required) modes->required();
    sub->add_option("--photons,-n", c.photons, "number of photons n")->required();
    sub->add_option("--ordering", c.ordering,
                    "Fock basis order: lex (default), reference ((2,0),(0,2),(1,1)) or @file");
    sub->add_option("--max-dimension", c.max_dimension, "largest accepted basis dimension M");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"optiq: linear-optics approximation of multi-photon unitaries"};
    app.name("optiq");
    app.require_subcommand(1);

    RunConfig config;
    std::string input;
    int count = 1;
    int bins = 20;
    double alpha = 0.01;

    auto* approx = app.add_subcommand("approximate", "approximate a target evolution matrix");
    add_basis_flags(approx, config, true);
    approx->add_option("target", input, "target M x M unitary (JSON or text)")->required();
    approx->add_option("--tol", config.tol, "stop when ||v_T|| falls below this");
    approx->add_option("--max-iter", config.max_iter, "iteration cap per start");
    approx->add_option("--starts,-k", config.starts, "number of starts (first is the identity)");
    approx->add_option("--seed", config.seed, "seed for the random starts");
    approx->add_option("--cluster-tol", config.cluster_tol, "Frobenius radius of a local optimum");
    approx->add_option("--branch", config.branch, "eigenangle range: upper (-pi,pi] or lower [-pi,pi)")
        ->check(CLI::IsMember({"upper", "lower"}));
    approx->add_option("--reunitarize-every", config.reunitarize_every,
                       "polar re-projection period, 0 disables");
    approx->add_option("--threads", config.threads, "worker threads, 0 = all cores");
    approx->add_flag("--trace", config.trace, "include per-step traces in the report");
    approx->add_option("--output,-o", config.output, "report path (default stdout)");

    auto* phi_cmd = app.add_subcommand("phi", "evolution matrix phi(S) of a scattering matrix");
    add_basis_flags(phi_cmd, config, false);
    phi_cmd->add_option("scattering", input, "m x m scattering matrix")->required();
    phi_cmd->add_option("--output,-o", config.output, "output path (default stdout)");

    auto* dphi_cmd = app.add_subcommand("dphi", "lift an element of u(m) to u(M)");
    add_basis_flags(dphi_cmd, config, false);
    dphi_cmd->add_option("generator", input, "m x m anti-Hermitian matrix")->required();
    dphi_cmd->add_option("--output,-o", config.output, "output path (default stdout)");

    auto* sample = app.add_subcommand("sample", "draw Haar-random scattering matrices");
    sample->add_option("--modes,-m", config.modes, "matrix size m")->required();
    sample->add_option("--seed", config.seed, "random seed");
    sample->add_option("--count", count, "number of samples");
    sample->add_option("--output,-o", config.output, "output path (default stdout)");

    auto* stats = app.add_subcommand("stats", "eigenphase-spacing chi-square test of U(2) samples");
    stats->add_option("samples", input, "samples file from `sample`, or - for stdin")->required();
    stats->add_option("--bins", bins, "number of equiprobable bins");
    stats->add_option("--alpha", alpha, "significance level");

    auto* decomp = app.add_subcommand("decompose", "beam-splitter mesh for a scattering matrix");
    decomp->add_option("scattering", input, "m x m scattering matrix")->required();
    decomp->add_option("--output,-o", config.output, "plan path (default stdout)");

    auto* replay = app.add_subcommand("replay", "re-run a report and compare its distances");
    replay->add_option("report", input, "report written by `approximate`")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*approx) return cmd_approximate(config, input, out);
        if (*phi_cmd) return cmd_phi(config, input, out);
        if (*dphi_cmd) return cmd_dphi(config, input, out);
        if (*sample) return cmd_sample(config, count, out);
        if (*stats) return cmd_stats(input, bins, alpha, out);
        if (*decomp) return cmd_decompose(input, config.output, out);
        if (*replay) return cmd_replay(input, out);
    } catch (const NumericalInstabilityError& e) {
        err << "optiq: numerical instability at step " << e.step() << ": " << e.what() << "\n";
        return kInstabilityError;
    } catch (const Error& e) {
        err << "optiq: " << to_string(e.kind()) << " error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const Json::exception& e) {
        err << "optiq: parse error: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        err << "optiq: error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

} // namespace optiq::cli
