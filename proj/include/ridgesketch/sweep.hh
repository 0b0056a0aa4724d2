#pragma once

#include "ridgesketch/lsqr.hh"
#include "ridgesketch/operators.hh"
#include "ridgesketch/precond.hh"
#include "ridgesketch/sketch.hh"
#include "ridgesketch/types.hh"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

extern "C" {
int openblas_get_num_threads(void);
void openblas_set_num_threads(int);
}

namespace ridgesketch {

enum class SweepMethod { chol, lowrank, qr_baseline, unpreconditioned };

inline const char* sweep_method_name(SweepMethod m) {
    switch (m) {
        case SweepMethod::chol: return "chol";
        case SweepMethod::lowrank: return "lowrank";
        case SweepMethod::qr_baseline: return "qr_baseline";
        case SweepMethod::unpreconditioned: return "unpreconditioned";
    }
    return "?";
}

inline SweepMethod sweep_method_from_name(const std::string& s) {
    if (s == "chol") return SweepMethod::chol;
    if (s == "lowrank") return SweepMethod::lowrank;
    if (s == "qr_baseline" || s == "qr") return SweepMethod::qr_baseline;
    if (s == "unpreconditioned" || s == "none") return SweepMethod::unpreconditioned;
    throw InvalidSpec("unknown sweep method: " + s);
}

struct SweepRequest {
    const ProblemInstance* problem = nullptr;
    std::vector<double> lambdas;
    SweepMethod method = SweepMethod::chol;
    std::optional<EmbeddingSpec> embedding;  // nullopt selects the defaults below
    double alpha = 2.0;                      // low-rank oversampling, s_i = alpha*ceil(sd_i)
    LsqrConfig solver;
    int threads = 1;  // per-lambda fan-out; 0 means all hardware threads
    std::optional<std::vector<double>> sd_estimates;  // aligned with lambdas
    std::optional<double> sd_guess;                   // pilot sizing hint
};

struct LambdaRecord {
    double lambda = 0.0;
    Vector x;             // ridge solution (length n)
    Vector aug_solution;  // [x; y] minimizer for underdetermined methods, else empty
    SolveReport report;
    double resid_norm = 0.0;  // ||A x - b||
    double x_norm = 0.0;
    Index s_i = 0;  // factor size used for this lambda
    double sd_hat = std::numeric_limits<double>::quiet_NaN();
    double factor_time_s = 0.0;
    double solve_time_s = 0.0;
};

struct SweepResult {
    SweepMethod method = SweepMethod::chol;
    std::optional<EmbeddingSpec> embedding;  // the spec actually used
    double alpha = 2.0;
    LsqrConfig solver;
    Index m = 0, n = 0;
    Orientation orientation = Orientation::overdetermined;
    ProblemMeta meta;
    std::vector<LambdaRecord> per_lambda;  // in request order
    double sketch_time_s = 0.0;
    double decomposition_time_s = 0.0;  // the shared Gram or SVD build
    Index sketch_dim = 0;
    std::vector<std::string> warnings;
};

namespace detail {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// Pins BLAS to one thread while the per-lambda fan-out owns the cores.
struct BlasThreadGuard {
    int saved;
    explicit BlasThreadGuard(int n) : saved(openblas_get_num_threads()) {
        openblas_set_num_threads(n);
    }
    ~BlasThreadGuard() { openblas_set_num_threads(saved); }
};

inline void parallel_for(int threads, std::size_t njobs,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    const int workers = static_cast<int>(std::min<std::size_t>(njobs, static_cast<std::size_t>(threads)));

    std::mutex err_mutex;
    std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
    auto guarded = [&](std::size_t i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            errors.emplace_back(i, std::current_exception());
        }
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < njobs; ++i) guarded(i);
    } else {
        BlasThreadGuard blas(1);
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < njobs; i = next.fetch_add(1)) guarded(i);
            });
        for (auto& t : pool) t.join();
    }
    if (!errors.empty()) {
        std::sort(errors.begin(), errors.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::rethrow_exception(errors.front().second);
    }
}

struct LambdaPlan {
    std::vector<double> unique_desc;     // deduplicated, sorted descending
    std::vector<std::size_t> slot_of;    // request index -> unique index
};

inline LambdaPlan plan_lambdas(const std::vector<double>& lambdas) {
    require(!lambdas.empty(), "sweep: lambda list must not be empty");
    for (double l : lambdas)
        require(l > 0.0 && std::isfinite(l), "sweep: every lambda must be positive and finite");
    LambdaPlan plan;
    std::map<double, std::size_t, std::greater<double>> order;
    for (double l : lambdas) order.emplace(l, 0);
    std::size_t idx = 0;
    for (auto& [l, slot] : order) {
        slot = idx++;
        plan.unique_desc.push_back(l);
    }
    plan.slot_of.reserve(lambdas.size());
    for (double l : lambdas) plan.slot_of.push_back(order.at(l));
    return plan;
}

inline void validate_request(const SweepRequest& req, Orientation expected) {
    require(req.problem != nullptr, "sweep: request carries no problem");
    req.problem->validate();
    require(req.problem->orientation == expected,
            std::string("sweep: method requires an ") + orientation_name(expected) + " problem");
    require(req.alpha >= 1.0, "sweep: oversampling alpha must be >= 1");
    if (req.sd_estimates)
        require(req.sd_estimates->size() == req.lambdas.size(),
                "sweep: sd_estimates must align with the lambda list");
}

constexpr std::uint64_t kDefaultSketchSeed = 20230527;

// Factorization-family default: Gaussian with s = min(4k, ambient).
inline EmbeddingSpec default_chol_embedding(Index ambient, Index k) {
    return EmbeddingSpec{EmbeddingKind::gaussian, std::min(4 * k, ambient), kDefaultSketchSeed};
}

// Fan unique-slot records back out to the request order.
inline std::vector<LambdaRecord> fan_out(const LambdaPlan& plan,
                                         std::vector<LambdaRecord>&& unique_records) {
    std::vector<LambdaRecord> out;
    out.reserve(plan.slot_of.size());
    for (std::size_t slot : plan.slot_of) out.push_back(unique_records[slot]);
    return out;
}

inline Vector stacked_rhs(const Vector& b, Index n) {
    Vector rhs = Vector::Zero(b.size() + n);
    rhs.head(b.size()) = b;
    return rhs;
}

template <typename Factor, typename Solve>
inline LambdaRecord run_lambda(double lambda, const ProblemInstance& prob, Factor&& factor,
                               Solve&& solve) {
    LambdaRecord rec;
    rec.lambda = lambda;
    Timer tf;
    auto prec = factor(lambda);
    rec.factor_time_s = tf.elapsed();
    Timer ts;
    solve(lambda, prec, rec);
    rec.solve_time_s = ts.elapsed();
    rec.resid_norm = (prob.A * rec.x - prob.b).norm();
    rec.x_norm = rec.x.norm();
    return rec;
}

}  // namespace detail

/*
 * Cholesky sweep, overdetermined. One left sketch Y = X A and
 * one Gram C = Y^T Y are computed for the whole lambda list; each lambda pays
 * only chol(C + lambda I) plus the preconditioned LSQR solve on
 * [A; sqrt(lambda) I] with right preconditioning and x = R^{-1} y.
 */
inline SweepResult solve_over_cholesky(const SweepRequest& req) {
    detail::validate_request(req, Orientation::overdetermined);
    const ProblemInstance& prob = *req.problem;
    const Index m = prob.rows(), n = prob.cols();
    const auto plan = detail::plan_lambdas(req.lambdas);

    SweepResult result;
    result.method = SweepMethod::chol;
    result.alpha = req.alpha;
    result.solver = req.solver;
    result.m = m;
    result.n = n;
    result.orientation = prob.orientation;
    result.meta = prob.meta;

    const EmbeddingSpec spec = req.embedding.value_or(detail::default_chol_embedding(m, n));
    if (spec.s < n)
        result.warnings.push_back("sketch dimension s < n; the low-rank method is recommended");
    result.embedding = spec;
    result.sketch_dim = spec.s;

    detail::Timer tsketch;
    const DenseMatrix Y = sketch_left(spec, prob.A);
    result.sketch_time_s = tsketch.elapsed();
    detail::Timer tgram;
    const DenseMatrix C = build_gram(Y, GramSide::left);
    result.decomposition_time_s = tgram.elapsed();

    std::vector<LambdaRecord> recs(plan.unique_desc.size());
    detail::parallel_for(req.threads, recs.size(), [&](std::size_t i) {
        const double lam = plan.unique_desc[i];
        try {
            recs[i] = detail::run_lambda(
                lam, prob, [&](double l) { return build_cholesky(C, l); },
                [&](double l, const CholeskyPreconditioner& R, LambdaRecord& rec) {
                    AugmentedOperator aug(prob.A, l, AugForm::over);
                    PreconditionedOperator<CholeskyPreconditioner> op(aug, R);
                    auto [y, rep] = lsqr(op, detail::stacked_rhs(prob.b, n), req.solver);
                    rec.x = R.apply_inverse(y, false);
                    rec.report = std::move(rep);
                    rec.s_i = R.dim();
                });
        } catch (const IllConditioned& e) {
            throw IllConditioned(std::string(e.what()) + " (lambda=" + std::to_string(lam) + ")");
        }
    });
    result.per_lambda = detail::fan_out(plan, std::move(recs));
    return result;
}

// Cholesky sweep, underdetermined: Y = A X, C = Y Y^T, and per
// lambda the min-length solve of the left-preconditioned D system; the ridge
// solution is the top n coordinates.
inline SweepResult solve_under_cholesky(const SweepRequest& req) {
    detail::validate_request(req, Orientation::underdetermined);
    const ProblemInstance& prob = *req.problem;
    const Index m = prob.rows(), n = prob.cols();
    const auto plan = detail::plan_lambdas(req.lambdas);

    SweepResult result;
    result.method = SweepMethod::chol;
    result.alpha = req.alpha;
    result.solver = req.solver;
    result.m = m;
    result.n = n;
    result.orientation = prob.orientation;
    result.meta = prob.meta;

    const EmbeddingSpec spec = req.embedding.value_or(detail::default_chol_embedding(n, m));
    if (spec.s < m)
        result.warnings.push_back("sketch dimension s < m; the low-rank method is recommended");
    result.embedding = spec;
    result.sketch_dim = spec.s;

    detail::Timer tsketch;
    const DenseMatrix Y = sketch_right(spec, prob.A);
    result.sketch_time_s = tsketch.elapsed();
    detail::Timer tgram;
    const DenseMatrix C = build_gram(Y, GramSide::right);
    result.decomposition_time_s = tgram.elapsed();

    std::vector<LambdaRecord> recs(plan.unique_desc.size());
    detail::parallel_for(req.threads, recs.size(), [&](std::size_t i) {
        const double lam = plan.unique_desc[i];
        try {
            recs[i] = detail::run_lambda(
                lam, prob, [&](double l) { return build_cholesky(C, l); },
                [&](double l, const CholeskyPreconditioner& R, LambdaRecord& rec) {
                    AugmentedOperator aug(prob.A, l, AugForm::under);
                    PreconditionedOperator<CholeskyPreconditioner> op(aug, R);
                    auto [z, rep] = lsqr(op, R.apply_inverse(prob.b, true), req.solver);
                    rec.aug_solution = std::move(z);
                    rec.x = rec.aug_solution.head(n);
                    rec.report = std::move(rep);
                    rec.s_i = R.dim();
                });
        } catch (const IllConditioned& e) {
            throw IllConditioned(std::string(e.what()) + " (lambda=" + std::to_string(lam) + ")");
        }
    });
    result.per_lambda = detail::fan_out(plan, std::move(recs));
    return result;
}

namespace detail {

struct LowRankShared {
    SvdSketch svd;
    std::vector<double> sd_hats;  // per unique lambda, descending lambda order
    Index sketch_s = 0;
};

// One sketch and one SVD serve every lambda. With supplied sd estimates the
// sketch size is alpha*ceil(sd at lambda_min); otherwise a pilot sketch of
// size min(k, 4*ceil(guess)) (k if no guess) doubles as the sketch, and
// sd-hats come from its singular values at zero extra cost.
inline LowRankShared lowrank_prepare(const SweepRequest& req, const LambdaPlan& plan,
                                     SweepResult& result, Index ambient, Index k, bool left_side) {
    const ProblemInstance& prob = *req.problem;
    LowRankShared shared;

    std::optional<std::vector<double>> supplied;  // per unique lambda
    if (req.sd_estimates) {
        supplied.emplace(plan.unique_desc.size());
        for (std::size_t i = 0; i < req.lambdas.size(); ++i)
            (*supplied)[plan.slot_of[i]] = (*req.sd_estimates)[i];
        for (double v : *supplied)
            require(v >= 0.0 && std::isfinite(v), "sweep: sd estimates must be nonnegative");
    }

    EmbeddingSpec spec;
    if (req.embedding) {
        spec = *req.embedding;
    } else {
        spec.kind = EmbeddingKind::gaussian;
        spec.seed = kDefaultSketchSeed;
        if (supplied) {
            const double sd_min_lambda = supplied->back();  // lambda_N = smallest lambda
            const auto s = static_cast<Index>(std::ceil(req.alpha * std::ceil(sd_min_lambda)));
            if (s > k)
                throw InvalidSpec("sweep: alpha * sd(lambda_min) exceeds min(m, n)");
            spec.s = std::max<Index>(s, 1);
        } else {
            Index pilot = k;
            if (req.sd_guess)
                pilot = std::min<Index>(k, 4 * static_cast<Index>(std::ceil(std::max(1.0, *req.sd_guess))));
            spec.s = pilot;
        }
    }
    validate_embedding(spec, ambient);
    result.embedding = spec;
    result.sketch_dim = spec.s;
    shared.sketch_s = spec.s;

    Timer tsketch;
    const DenseMatrix Y = left_side ? sketch_left(spec, prob.A) : sketch_right(spec, prob.A);
    result.sketch_time_s = tsketch.elapsed();
    Timer tsvd;
    shared.svd = svd_sketch(Y, left_side ? GramSide::left : GramSide::right);
    result.decomposition_time_s = tsvd.elapsed();

    shared.sd_hats.resize(plan.unique_desc.size());
    for (std::size_t i = 0; i < plan.unique_desc.size(); ++i)
        shared.sd_hats[i] =
            supplied ? (*supplied)[i] : estimate_sd(shared.svd.sigma, plan.unique_desc[i]);
    return shared;
}

inline Index lowrank_rank_for(const LowRankShared& shared, double sd_hat, bool supplied,
                              double alpha) {
    const auto raw = static_cast<Index>(std::ceil(alpha * std::ceil(sd_hat)));
    const Index avail = shared.svd.sigma.size();
    if (supplied && raw > avail)
        throw InvalidTruncation("sweep: sd estimate needs rank " + std::to_string(raw) +
                                " but the sketch holds " + std::to_string(avail) +
                                " (inconsistent sd estimates)");
    return std::clamp<Index>(raw, 1, avail);
}

}  // namespace detail

/*
 * Low-rank sweep, overdetermined. The lambda list is processed
 * in descending order internally (user order restored in the output); each
 * lambda truncates the shared sketch SVD to s_i = alpha*ceil(sd_i) columns
 * and solves with R_i^{-1} = lambda^{-1/2}(I - V_i S_i V_i^T).
 */
inline SweepResult solve_over_lowrank(const SweepRequest& req) {
    detail::validate_request(req, Orientation::overdetermined);
    const ProblemInstance& prob = *req.problem;
    const Index m = prob.rows(), n = prob.cols();
    const auto plan = detail::plan_lambdas(req.lambdas);

    SweepResult result;
    result.method = SweepMethod::lowrank;
    result.alpha = req.alpha;
    result.solver = req.solver;
    result.m = m;
    result.n = n;
    result.orientation = prob.orientation;
    result.meta = prob.meta;

    const auto shared = detail::lowrank_prepare(req, plan, result, m, n, /*left_side=*/true);
    const bool supplied = req.sd_estimates.has_value();

    std::vector<LambdaRecord> recs(plan.unique_desc.size());
    detail::parallel_for(req.threads, recs.size(), [&](std::size_t i) {
        const double lam = plan.unique_desc[i];
        const Index s_i = detail::lowrank_rank_for(shared, shared.sd_hats[i], supplied, req.alpha);
        recs[i] = detail::run_lambda(
            lam, prob, [&](double l) { return lowrank_from_svd(shared.svd, l, s_i); },
            [&](double l, const LowRankPreconditioner& P, LambdaRecord& rec) {
                AugmentedOperator aug(prob.A, l, AugForm::over);
                PreconditionedOperator<LowRankPreconditioner> op(aug, P);
                auto [y, rep] = lsqr(op, detail::stacked_rhs(prob.b, n), req.solver);
                rec.x = P.apply_inverse(y, false);
                rec.report = std::move(rep);
                rec.s_i = s_i;
                rec.sd_hat = shared.sd_hats[i];
            });
    });
    result.per_lambda = detail::fan_out(plan, std::move(recs));
    return result;
}

// Low-rank sweep, underdetermined: mirror of the overdetermined sweep with
// U-side factors and left preconditioning; returns the first n coordinates.
inline SweepResult solve_under_lowrank(const SweepRequest& req) {
    detail::validate_request(req, Orientation::underdetermined);
    const ProblemInstance& prob = *req.problem;
    const Index m = prob.rows(), n = prob.cols();
    const auto plan = detail::plan_lambdas(req.lambdas);

    SweepResult result;
    result.method = SweepMethod::lowrank;
    result.alpha = req.alpha;
    result.solver = req.solver;
    result.m = m;
    result.n = n;
    result.orientation = prob.orientation;
    result.meta = prob.meta;

    const auto shared = detail::lowrank_prepare(req, plan, result, n, m, /*left_side=*/false);
    const bool supplied = req.sd_estimates.has_value();

    std::vector<LambdaRecord> recs(plan.unique_desc.size());
    detail::parallel_for(req.threads, recs.size(), [&](std::size_t i) {
        const double lam = plan.unique_desc[i];
        const Index s_i = detail::lowrank_rank_for(shared, shared.sd_hats[i], supplied, req.alpha);
        recs[i] = detail::run_lambda(
            lam, prob, [&](double l) { return lowrank_from_svd(shared.svd, l, s_i); },
            [&](double l, const LowRankPreconditioner& P, LambdaRecord& rec) {
                AugmentedOperator aug(prob.A, l, AugForm::under);
                PreconditionedOperator<LowRankPreconditioner> op(aug, P);
                auto [z, rep] = lsqr(op, P.apply_inverse(prob.b, true), req.solver);
                rec.aug_solution = std::move(z);
                rec.x = rec.aug_solution.head(n);
                rec.report = std::move(rep);
                rec.s_i = s_i;
                rec.sd_hat = shared.sd_hats[i];
            });
    });
    result.per_lambda = detail::fan_out(plan, std::move(recs));
    return result;
}

// QR baseline: per lambda, QR of the stacked [Y; sqrt(lambda) I_n] and the
// R factor as the right preconditioner. Numerically equivalent to the
// Cholesky sweep; it exists for benchmarking the marginal per-lambda cost.
inline SweepResult solve_qr_baseline(const SweepRequest& req) {
    detail::validate_request(req, Orientation::overdetermined);
    const ProblemInstance& prob = *req.problem;
    const Index m = prob.rows(), n = prob.cols();
    const auto plan = detail::plan_lambdas(req.lambdas);

    SweepResult result;
    result.method = SweepMethod::qr_baseline;
    result.alpha = req.alpha;
    result.solver = req.solver;
    result.m = m;
    result.n = n;
    result.orientation = prob.orientation;
    result.meta = prob.meta;

    const EmbeddingSpec spec = req.embedding.value_or(detail::default_chol_embedding(m, n));
    result.embedding = spec;
    result.sketch_dim = spec.s;

    detail::Timer tsketch;
    const DenseMatrix Y = sketch_left(spec, prob.A);
    result.sketch_time_s = tsketch.elapsed();

    std::vector<LambdaRecord> recs(plan.unique_desc.size());
    detail::parallel_for(req.threads, recs.size(), [&](std::size_t i) {
        const double lam = plan.unique_desc[i];
        recs[i] = detail::run_lambda(
            lam, prob,
            [&](double l) {
                DenseMatrix stack(Y.rows() + n, n);
                stack.topRows(Y.rows()) = Y;
                stack.bottomRows(n) = std::sqrt(l) * DenseMatrix::Identity(n, n);
                return CholeskyPreconditioner{qr_r_factor(std::move(stack)), l};
            },
            [&](double l, const CholeskyPreconditioner& R, LambdaRecord& rec) {
                AugmentedOperator aug(prob.A, l, AugForm::over);
                PreconditionedOperator<CholeskyPreconditioner> op(aug, R);
                auto [y, rep] = lsqr(op, detail::stacked_rhs(prob.b, n), req.solver);
                rec.x = R.apply_inverse(y, false);
                rec.report = std::move(rep);
                rec.s_i = R.dim();
            });
    });
    result.per_lambda = detail::fan_out(plan, std::move(recs));
    return result;
}

// Plain LSQR on the augmented system, no sketch. The comparison baseline for
// the preconditioning-benefit checks.
inline SweepResult solve_unpreconditioned(const SweepRequest& req) {
    require(req.problem != nullptr, "sweep: request carries no problem");
    req.problem->validate();
    const ProblemInstance& prob = *req.problem;
    const Index m = prob.rows(), n = prob.cols();
    const auto plan = detail::plan_lambdas(req.lambdas);
    const bool over = prob.orientation == Orientation::overdetermined;

    SweepResult result;
    result.method = SweepMethod::unpreconditioned;
    result.alpha = req.alpha;
    result.solver = req.solver;
    result.m = m;
    result.n = n;
    result.orientation = prob.orientation;
    result.meta = prob.meta;

    std::vector<LambdaRecord> recs(plan.unique_desc.size());
    detail::parallel_for(req.threads, recs.size(), [&](std::size_t i) {
        const double lam = plan.unique_desc[i];
        recs[i] = detail::run_lambda(
            lam, prob, [&](double) { return 0; },
            [&](double l, int, LambdaRecord& rec) {
                if (over) {
                    AugmentedOperator aug(prob.A, l, AugForm::over);
                    auto [y, rep] = lsqr(aug, detail::stacked_rhs(prob.b, n), req.solver);
                    rec.x = std::move(y);
                    rec.report = std::move(rep);
                } else {
                    AugmentedOperator aug(prob.A, l, AugForm::under);
                    auto [z, rep] = lsqr(aug, prob.b, req.solver);
                    rec.aug_solution = std::move(z);
                    rec.x = rec.aug_solution.head(n);
                    rec.report = std::move(rep);
                }
                rec.s_i = 0;
            });
    });
    result.per_lambda = detail::fan_out(plan, std::move(recs));
    return result;
}

inline SweepResult run_sweep(const SweepRequest& req) {
    require(req.problem != nullptr, "sweep: request carries no problem");
    const bool over = req.problem->orientation == Orientation::overdetermined;
    switch (req.method) {
        case SweepMethod::chol:
            return over ? solve_over_cholesky(req) : solve_under_cholesky(req);
        case SweepMethod::lowrank:
            return over ? solve_over_lowrank(req) : solve_under_lowrank(req);
        case SweepMethod::qr_baseline:
            return solve_qr_baseline(req);
        case SweepMethod::unpreconditioned:
            return solve_unpreconditioned(req);
    }
    throw InvalidSpec("run_sweep: unknown method");
}

// ---------------------------------------------------------------------------
// L-curve

struct LCurvePoint {
    double lambda = 0.0;
    double log_resid = 0.0;  // log ||A x - b||
    double log_xnorm = 0.0;  // log ||x||
};

struct LCurve {
    std::vector<LCurvePoint> points;     // lambda descending
    std::optional<Index> corner;         // index into points; unset below 3 points
};

// Corner = maximum discrete Menger curvature over the log-log polyline.
inline LCurve lcurve(const SweepResult& result) {
    LCurve curve;
    std::vector<const LambdaRecord*> recs;
    recs.reserve(result.per_lambda.size());
    for (const auto& r : result.per_lambda) recs.push_back(&r);
    std::sort(recs.begin(), recs.end(),
              [](const LambdaRecord* a, const LambdaRecord* b) { return a->lambda > b->lambda; });

    const double floor_val = 1e-300;  // log of an exactly-zero norm
    for (const auto* r : recs)
        curve.points.push_back(LCurvePoint{r->lambda, std::log(std::max(r->resid_norm, floor_val)),
                                           std::log(std::max(r->x_norm, floor_val))});

    const Index np = static_cast<Index>(curve.points.size());
    if (np < 3) return curve;

    double best = -1.0;
    Index best_i = 1;
    for (Index i = 1; i + 1 < np; ++i) {
        const auto& p0 = curve.points[i - 1];
        const auto& p1 = curve.points[i];
        const auto& p2 = curve.points[i + 1];
        const double ax = p1.log_resid - p0.log_resid, ay = p1.log_xnorm - p0.log_xnorm;
        const double cx = p2.log_resid - p1.log_resid, cy = p2.log_xnorm - p1.log_xnorm;
        const double dx = p2.log_resid - p0.log_resid, dy = p2.log_xnorm - p0.log_xnorm;
        const double denom = std::sqrt((ax * ax + ay * ay) * (cx * cx + cy * cy) * (dx * dx + dy * dy));
        const double kappa = denom > 0.0 ? 2.0 * std::abs(ax * cy - ay * cx) / denom : 0.0;
        if (kappa > best) {
            best = kappa;
            best_i = i;
        }
    }
    curve.corner = best_i;
    return curve;
}

}  // namespace ridgesketch
