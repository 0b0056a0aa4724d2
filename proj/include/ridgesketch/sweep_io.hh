#pragma once

#include "ridgesketch/sweep.hh"
#include "ridgesketch/types.hh"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace ridgesketch {

inline constexpr const char* kSweepReportSchema = "ridgesketch-sweep-report-v1";

inline nlohmann::json to_json(const EmbeddingSpec& spec) {
    return {{"kind", embedding_kind_name(spec.kind)}, {"s", spec.s}, {"seed", spec.seed}};
}

inline EmbeddingSpec embedding_from_json(const nlohmann::json& j) {
    EmbeddingSpec spec;
    spec.kind = embedding_kind_from_name(j.at("kind").get<std::string>());
    spec.s = j.at("s").get<Index>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
}

inline nlohmann::json to_json(const SweepResult& result, bool emit_solutions = false) {
    nlohmann::json j;
    j["schema"] = kSweepReportSchema;
    j["method"] = sweep_method_name(result.method);
    j["problem"] = {{"m", result.m},
                    {"n", result.n},
                    {"orientation", orientation_name(result.orientation)},
                    {"seed", result.meta.seed},
                    {"spectrum", result.meta.spectrum},
                    {"noise_norm", result.meta.noise_norm}};
    j["embedding"] = result.embedding ? to_json(*result.embedding) : nlohmann::json(nullptr);
    j["alpha"] = result.alpha;
    j["solver"] = {{"rel_tolerance", result.solver.rel_tolerance},
                   {"max_iterations", result.solver.max_iterations}};
    j["timings"] = {{"sketch_s", result.sketch_time_s},
                    {"decomposition_s", result.decomposition_time_s}};
    j["warnings"] = result.warnings;
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : result.per_lambda) {
        nlohmann::json r = {{"lambda", rec.lambda},
                            {"iterations", rec.report.iterations},
                            {"termination", termination_name(rec.report.termination)},
                            {"resid_norm", rec.resid_norm},
                            {"x_norm", rec.x_norm},
                            {"s_i", rec.s_i},
                            {"sd_hat", std::isnan(rec.sd_hat) ? nlohmann::json(nullptr)
                                                              : nlohmann::json(rec.sd_hat)},
                            {"factor_time_s", rec.factor_time_s},
                            {"solve_time_s", rec.solve_time_s}};
        if (emit_solutions) {
            r["x"] = std::vector<double>(rec.x.data(), rec.x.data() + rec.x.size());
            if (rec.aug_solution.size() > 0)
                r["aug_solution"] = std::vector<double>(
                    rec.aug_solution.data(), rec.aug_solution.data() + rec.aug_solution.size());
        }
        records.push_back(std::move(r));
    }
    j["results"] = std::move(records);
    return j;
}

// One row per lambda: lambda, iters, resid, xnorm, s_i, sd_hat, times.
inline void write_sweep_csv(const std::string& path, const SweepResult& result) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << "lambda,iterations,termination,resid_norm,x_norm,s_i,sd_hat,factor_time_s,solve_time_s\n";
    f.precision(17);
    for (const auto& rec : result.per_lambda) {
        f << rec.lambda << ',' << rec.report.iterations << ','
          << termination_name(rec.report.termination) << ',' << rec.resid_norm << ','
          << rec.x_norm << ',' << rec.s_i << ',';
        if (std::isnan(rec.sd_hat))
            f << "nan";
        else
            f << rec.sd_hat;
        f << ',' << rec.factor_time_s << ',' << rec.solve_time_s << "\n";
    }
    if (!f) throw IoError("write failed: " + path);
}

inline nlohmann::json to_json(const LCurve& curve) {
    nlohmann::json j;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : curve.points)
        pts.push_back({{"lambda", p.lambda}, {"log_resid", p.log_resid}, {"log_xnorm", p.log_xnorm}});
    j["points"] = std::move(pts);
    if (curve.corner) {
        j["corner_index"] = *curve.corner;
        j["corner_lambda"] = curve.points[static_cast<std::size_t>(*curve.corner)].lambda;
    } else {
        j["corner_index"] = nullptr;
        j["corner_lambda"] = nullptr;
    }
    return j;
}

inline void write_lcurve_csv(const std::string& path, const LCurve& curve) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << "lambda,log_resid,log_xnorm,is_corner\n";
    f.precision(17);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        const bool corner = curve.corner && static_cast<std::size_t>(*curve.corner) == i;
        f << p.lambda << ',' << p.log_resid << ',' << p.log_xnorm << ',' << (corner ? 1 : 0) << "\n";
    }
    if (!f) throw IoError("write failed: " + path);
}

// Lambda grid syntax: "a:b:Klog" gives K log-spaced values from a to b;
// a plain comma-separated list is also accepted.
inline std::vector<double> parse_lambda_spec(const std::string& text) {
    const auto logpos = text.rfind("log");
    if (logpos != std::string::npos && logpos == text.size() - 3) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw InvalidSpec("lambda grid must look like a:b:Klog");
        const double a = std::stod(text.substr(0, c1));
        const double b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const long k = std::stol(text.substr(c2 + 1, logpos - c2 - 1));
        if (a <= 0.0 || b <= 0.0 || k < 1) throw InvalidSpec("lambda grid needs a,b > 0 and K >= 1");
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(k));
        if (k == 1) {
            out.push_back(a);
            return out;
        }
        const double la = std::log(a), lb = std::log(b);
        for (long i = 0; i < k; ++i)
            out.push_back(std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(k - 1)));
        return out;
    }
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw InvalidSpec("empty lambda list");
    return out;
}

}  // namespace ridgesketch
