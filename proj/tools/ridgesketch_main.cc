// Command-line surface: synthetic problem generation, lambda sweeps with the
// randomized preconditioners, L-curve emission, and method benchmarking.

#include "ridgesketch/ridgesketch.hh"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace rs = ridgesketch;
using nlohmann::json;

namespace {

std::string path_stem(const std::string& path) {
    for (const char* ext : {".rskm", ".mtx", ".mm"})
        if (rs::has_suffix(path, ext)) return path.substr(0, path.size() - std::string(ext).size());
    return path;
}

std::optional<std::uint64_t> env_seed_override() {
    if (const char* v = std::getenv("RIDGE_SKETCH_SEED"))
        return static_cast<std::uint64_t>(std::stoull(v));
    return std::nullopt;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw rs::IoError("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
    if (!f) throw rs::IoError("write failed: " + path);
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw rs::IoError("cannot open: " + path);
    return json::parse(f);
}

rs::ProblemInstance load_problem(const std::string& input) {
    rs::ProblemInstance prob;
    prob.A = rs::read_matrix_any(input);
    const std::string stem = path_stem(input);
    prob.b = rs::read_rskm_vector(stem + ".b");
    prob.orientation = rs::infer_orientation(prob.A.rows(), prob.A.cols());
    std::ifstream meta_file(stem + ".meta.json");
    if (meta_file) {
        const json meta = json::parse(meta_file);
        prob.meta.seed = meta.value("seed", std::uint64_t{0});
        prob.meta.spectrum = meta.value("spectrum", std::string{});
        prob.meta.noise_norm = meta.value("noise_norm", 0.0);
        if (meta.contains("orientation"))
            prob.orientation = meta.at("orientation").get<std::string>() == "underdetermined"
                                   ? rs::Orientation::underdetermined
                                   : rs::Orientation::overdetermined;
    }
    prob.validate();
    return prob;
}

struct GenerateArgs {
    long m = 0, n = 0;
    double sigma_max = 1.0, sigma_min = 1.0, noise = 0.0;
    std::uint64_t seed = 0;
    std::string output;
};

int run_generate(const GenerateArgs& args) {
    rs::GeneratorSpec spec;
    spec.m = args.m;
    spec.n = args.n;
    spec.sigma_max = args.sigma_max;
    spec.sigma_min = args.sigma_min;
    spec.noise_norm = args.noise;
    spec.seed = env_seed_override().value_or(args.seed);
    const auto gen = rs::generate_problem(spec);

    const std::string stem = path_stem(args.output);
    rs::write_matrix_any(args.output, gen.problem.A);
    rs::write_rskm_vector(stem + ".b", gen.problem.b);
    const json meta = {{"m", spec.m},
                       {"n", spec.n},
                       {"orientation", rs::orientation_name(gen.problem.orientation)},
                       {"seed", spec.seed},
                       {"sigma_max", spec.sigma_max},
                       {"sigma_min", spec.sigma_min},
                       {"noise_norm", spec.noise_norm},
                       {"spectrum", gen.problem.meta.spectrum}};
    write_json_file(stem + ".meta.json", meta);
    std::cout << "wrote " << args.output << ", " << stem << ".b, " << stem << ".meta.json\n";
    return 0;
}

struct SweepArgs {
    std::string input, method = "chol", lambdas, report, csv, embedding;
    long sketch_size = 0;
    std::uint64_t sketch_seed = rs::detail::kDefaultSketchSeed;
    double alpha = 2.0, tol = 1e-6;
    long maxit = 0;
    int threads = 0;
    bool emit_solutions = false;
};

int run_sweep_cmd(const SweepArgs& args) {
    const rs::ProblemInstance prob = load_problem(args.input);
    rs::SweepRequest req;
    req.problem = &prob;
    req.lambdas = rs::parse_lambda_spec(args.lambdas);
    req.method = rs::sweep_method_from_name(args.method);
    req.alpha = args.alpha;
    req.solver.rel_tolerance = args.tol;
    req.solver.max_iterations = args.maxit;
    req.threads = args.threads;
    if (!args.embedding.empty() || args.sketch_size > 0) {
        rs::EmbeddingSpec spec;
        spec.kind = args.embedding.empty() ? rs::EmbeddingKind::gaussian
                                           : rs::embedding_kind_from_name(args.embedding);
        const rs::Index k = std::min(prob.rows(), prob.cols());
        const rs::Index ambient =
            prob.orientation == rs::Orientation::overdetermined ? prob.rows() : prob.cols();
        spec.s = args.sketch_size > 0 ? args.sketch_size : std::min<rs::Index>(4 * k, ambient);
        spec.seed = args.sketch_seed;
        req.embedding = spec;
    }
    if (const auto env = env_seed_override()) {
        rs::EmbeddingSpec spec = req.embedding.value_or(rs::EmbeddingSpec{
            rs::EmbeddingKind::gaussian, 0, rs::detail::kDefaultSketchSeed});
        spec.seed = *env;
        if (spec.s > 0) req.embedding = spec;
        // With no explicit embedding the sweep picks its default sizes; the
        // seed override still has to reach it.
        if (!req.embedding) {
            const rs::Index k = std::min(prob.rows(), prob.cols());
            const rs::Index ambient =
                prob.orientation == rs::Orientation::overdetermined ? prob.rows() : prob.cols();
            spec.s = req.method == rs::SweepMethod::lowrank ? k : std::min<rs::Index>(4 * k, ambient);
            req.embedding = spec;
        }
    }

    const rs::SweepResult result = rs::run_sweep(req);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    if (!args.report.empty()) write_json_file(args.report, rs::to_json(result, args.emit_solutions));
    if (!args.csv.empty()) rs::write_sweep_csv(args.csv, result);
    std::cout << "sweep done: " << result.per_lambda.size() << " lambda values, method "
              << rs::sweep_method_name(result.method) << "\n";
    return 0;
}

struct LcurveArgs {
    std::string input, csv, json_out;
};

int run_lcurve(const LcurveArgs& args) {
    const json report = read_json_file(args.input);
    rs::SweepResult result;
    for (const auto& r : report.at("results")) {
        rs::LambdaRecord rec;
        rec.lambda = r.at("lambda").get<double>();
        rec.resid_norm = r.at("resid_norm").get<double>();
        rec.x_norm = r.at("x_norm").get<double>();
        result.per_lambda.push_back(std::move(rec));
    }
    const rs::LCurve curve = rs::lcurve(result);
    if (!args.csv.empty()) rs::write_lcurve_csv(args.csv, curve);
    if (!args.json_out.empty()) write_json_file(args.json_out, rs::to_json(curve));
    if (curve.corner)
        std::cout << "corner: lambda=" << curve.points[static_cast<std::size_t>(*curve.corner)].lambda
                  << " (index " << *curve.corner << ")\n";
    else
        std::cout << "corner: undefined (fewer than 3 points)\n";
    return 0;
}

struct BenchArgs {
    std::string methods = "chol,qr_baseline", lambdas = "10:1e-8:15log", embedding = "srtt";
    std::string input, report, csv;
    double oversampling = 20.0;
    long m = 12000, n = 500;
    double sigma_max = 1.0, sigma_min = 1e-5, noise = 1e-3, tol = 1e-6;
    std::uint64_t seed = 99;
    std::uint64_t sketch_seed = rs::detail::kDefaultSketchSeed;
    int runs = 5;
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string tok =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!tok.empty()) out.push_back(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size();
    return k == 0 ? 0.0 : (k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]));
}

int run_bench(const BenchArgs& args) {
    rs::ProblemInstance prob;
    if (!args.input.empty()) {
        prob = load_problem(args.input);
    } else {
        rs::GeneratorSpec gspec;
        gspec.m = args.m;
        gspec.n = args.n;
        gspec.sigma_max = args.sigma_max;
        gspec.sigma_min = args.sigma_min;
        gspec.noise_norm = args.noise;
        gspec.seed = args.seed;
        prob = rs::generate_problem(gspec).problem;
    }
    const rs::Index k = std::min(prob.rows(), prob.cols());
    const rs::Index ambient =
        prob.orientation == rs::Orientation::overdetermined ? prob.rows() : prob.cols();
    const auto lambdas = rs::parse_lambda_spec(args.lambdas);

    json out;
    out["schema"] = "ridgesketch-bench-report-v1";
    out["problem"] = {{"m", prob.rows()}, {"n", prob.cols()}};
    out["oversampling"] = args.oversampling;
    out["runs"] = args.runs;
    out["lambdas"] = lambdas;
    json per_method = json::object();

    std::cout << "method            sketch_s   decomp_s   median_marginal_s\n";
    for (const std::string& name : split_csv(args.methods)) {
        rs::SweepRequest req;
        req.problem = &prob;
        req.lambdas = lambdas;
        req.method = rs::sweep_method_from_name(name);
        req.solver.rel_tolerance = args.tol;
        req.threads = 1;  // timings are per-lambda; keep the loop serial
        if (req.method == rs::SweepMethod::lowrank) {
            req.alpha = args.oversampling;
        } else if (req.method != rs::SweepMethod::unpreconditioned) {
            rs::EmbeddingSpec spec;
            spec.kind = rs::embedding_kind_from_name(args.embedding);
            spec.s = std::min<rs::Index>(static_cast<rs::Index>(args.oversampling * static_cast<double>(k)),
                                         ambient);
            spec.seed = env_seed_override().value_or(args.sketch_seed);
            req.embedding = spec;
        }

        std::vector<double> sketch_times, decomp_times, marginals;
        json marginal_runs = json::array();
        for (int run = 0; run < args.runs; ++run) {
            const rs::SweepResult result = rs::run_sweep(req);
            sketch_times.push_back(result.sketch_time_s);
            decomp_times.push_back(result.decomposition_time_s);
            json row = json::array();
            for (const auto& rec : result.per_lambda) {
                const double t = rec.factor_time_s + rec.solve_time_s;
                marginals.push_back(t);
                row.push_back(t);
            }
            marginal_runs.push_back(std::move(row));
        }
        const double med = median(marginals);
        per_method[name] = {{"sketch_s", sketch_times},
                            {"decomposition_s", decomp_times},
                            {"marginal_s", marginal_runs},
                            {"median_marginal_s", med}};
        std::printf("%-17s %9.4f  %9.4f   %.6f\n", name.c_str(), median(sketch_times),
                    median(decomp_times), med);
    }
    out["methods"] = std::move(per_method);
    if (!args.report.empty()) write_json_file(args.report, out);
    if (!args.csv.empty()) {
        std::ofstream f(args.csv);
        f << "method,median_marginal_s\n";
        for (auto& [name, rec] : out["methods"].items())
            f << name << ',' << rec["median_marginal_s"].get<double>() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized preconditioning for Tikhonov-regularized least squares"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* cgen = app.add_subcommand("generate", "generate a synthetic problem (A, b, metadata)");
    cgen->add_option("--m", gen.m, "rows")->required();
    cgen->add_option("--n", gen.n, "columns")->required();
    cgen->add_option("--sigma-max", gen.sigma_max, "largest singular value");
    cgen->add_option("--sigma-min", gen.sigma_min, "smallest singular value");
    cgen->add_option("--noise", gen.noise, "norm of the additive noise eta");
    cgen->add_option("--seed", gen.seed, "generator seed");
    cgen->add_option("-o,--output", gen.output, "matrix path (.rskm or .mtx)")->required();

    SweepArgs sw;
    auto* csw = app.add_subcommand("sweep", "solve the ridge problem across a lambda grid");
    csw->add_option("-i,--input", sw.input, "problem matrix path")->required();
    csw->add_option("--method", sw.method, "chol | lowrank | qr_baseline | unpreconditioned");
    csw->add_option("--lambdas", sw.lambdas, "grid: a:b:Klog or comma list")->required();
    csw->add_option("--alpha", sw.alpha, "low-rank oversampling factor");
    csw->add_option("--embedding", sw.embedding, "gaussian | srtt | sparse");
    csw->add_option("--sketch-size", sw.sketch_size, "embedding dimension s");
    csw->add_option("--sketch-seed", sw.sketch_seed, "embedding seed");
    csw->add_option("--tol", sw.tol, "LSQR relative tolerance");
    csw->add_option("--maxit", sw.maxit, "LSQR iteration cap (0 = default)");
    csw->add_option("--threads", sw.threads, "per-lambda worker threads (0 = all cores)");
    csw->add_option("--report", sw.report, "JSON report path");
    csw->add_option("--csv", sw.csv, "CSV report path");
    csw->add_flag("--emit-solutions", sw.emit_solutions, "include solution vectors in the report");

    LcurveArgs lc;
    auto* clc = app.add_subcommand("lcurve", "L-curve points and corner from a sweep report");
    clc->add_option("-i,--input", lc.input, "sweep report JSON")->required();
    clc->add_option("-o,--csv", lc.csv, "CSV output path");
    clc->add_option("--json", lc.json_out, "JSON output path");

    BenchArgs bn;
    auto* cbn = app.add_subcommand("bench", "compare per-lambda cost across methods");
    cbn->add_option("--methods", bn.methods, "comma list of methods");
    cbn->add_option("--oversampling", bn.oversampling, "s = oversampling * min(m,n); alpha for lowrank");
    cbn->add_option("--m", bn.m, "rows of the generated problem");
    cbn->add_option("--n", bn.n, "columns of the generated problem");
    cbn->add_option("--sigma-max", bn.sigma_max, "largest singular value");
    cbn->add_option("--sigma-min", bn.sigma_min, "smallest singular value");
    cbn->add_option("--noise", bn.noise, "noise norm");
    cbn->add_option("--seed", bn.seed, "generator seed");
    cbn->add_option("--sketch-seed", bn.sketch_seed, "embedding seed");
    cbn->add_option("--lambdas", bn.lambdas, "lambda grid");
    cbn->add_option("--embedding", bn.embedding, "embedding kind for chol/qr");
    cbn->add_option("--runs", bn.runs, "repetitions per method");
    cbn->add_option("--tol", bn.tol, "LSQR relative tolerance");
    cbn->add_option("-i,--input", bn.input, "use an existing problem instead of generating");
    cbn->add_option("--report", bn.report, "JSON report path");
    cbn->add_option("--csv", bn.csv, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const char* error_type = "error";
    try {
        if (cgen->parsed()) return run_generate(gen);
        if (csw->parsed()) return run_sweep_cmd(sw);
        if (clc->parsed()) return run_lcurve(lc);
        if (cbn->parsed()) return run_bench(bn);
        return 2;
    } catch (const rs::ContractViolation& e) {
        error_type = "contract_violation";
        std::cerr << json{{"error", {{"type", error_type}, {"message", e.what()}}}}.dump() << "\n";
    } catch (const rs::InvalidSpec& e) {
        error_type = "invalid_spec";
        std::cerr << json{{"error", {{"type", error_type}, {"message", e.what()}}}}.dump() << "\n";
    } catch (const rs::IllConditioned& e) {
        error_type = "ill_conditioned";
        std::cerr << json{{"error", {{"type", error_type}, {"message", e.what()}}}}.dump() << "\n";
    } catch (const rs::InvalidTruncation& e) {
        error_type = "invalid_truncation";
        std::cerr << json{{"error", {{"type", error_type}, {"message", e.what()}}}}.dump() << "\n";
    } catch (const rs::IoError& e) {
        error_type = "io_error";
        std::cerr << json{{"error", {{"type", error_type}, {"message", e.what()}}}}.dump() << "\n";
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"type", error_type}, {"message", e.what()}}}}.dump() << "\n";
    }
    return 1;
}
