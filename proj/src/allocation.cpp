// SPDX-License-Identifier: Apache-2.0

#include "swipt/allocation.hpp"

#include "swipt/error.hpp"
#include "swipt/random.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace swipt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_problem(const PaProblem& pb)
{
    const auto users = pb.gain.size();
    if (users == 0)
        throw DimensionError("empty allocation problem");
    if (pb.field_gram.size() != users || pb.alpha.size() != users || pb.beta.size() != users)
        throw DimensionError("allocation problem fields disagree on user count");
    for (const auto& g : pb.field_gram)
        if (g.rows() != static_cast<Eigen::Index>(users) || g.cols() != static_cast<Eigen::Index>(users))
            throw DimensionError("field Gram matrix has wrong shape");
    if (!(pb.budget > 0.0) || !std::isfinite(pb.budget))
        throw ConfigError("power budget must be positive");
}

Eigen::VectorXd to_amplitudes(std::span<const double> p)
{
    Eigen::VectorXd s(static_cast<Eigen::Index>(p.size()));
    for (std::size_t j = 0; j < p.size(); ++j)
        s(static_cast<Eigen::Index>(j)) = std::sqrt(std::max(p[j], 0.0));
    return s;
}

// Sum-of-Gram matrix of the EH-only problem.
Eigen::MatrixXd total_gram(const PaProblem& pb)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(pb.users(), pb.users());
    for (const auto& g : pb.field_gram)
        a += g;
    return a;
}

// Closed-form rho for fixed powers: user k sees gain p_k g_k and harvests
// zeta s^T G_k s, so the equal-power closed form applies with p_t = 1.
std::vector<double> best_rho(const PaProblem& pb, const Eigen::VectorXd& s, std::vector<bool>* degenerate)
{
    const int users = pb.users();
    std::vector<double> rho(static_cast<std::size_t>(users));
    if (degenerate)
        degenerate->assign(static_cast<std::size_t>(users), false);
    for (int k = 0; k < users; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const UserSignal sig{s(k) * s(k) * pb.gain[i], s.dot(pb.field_gram[i] * s)};
        const ClosedFormRho r = pso_closed_form(sig, pb.alpha[i], pb.beta[i], pb.zeta, 1.0);
        rho[i] = r.rho;
        if (degenerate)
            (*degenerate)[i] = r.degenerate;
    }
    return rho;
}

PaResult make_result(const PaProblem& pb, Eigen::VectorXd s)
{
    // Scaling s up raises every rate and harvest term, so the optimum sits on
    // the budget.
    const double sq = s.squaredNorm();
    if (sq > 0.0)
        s *= std::sqrt(pb.budget / sq);
    PaResult r;
    r.split.rho = best_rho(pb, s, &r.split.degenerate);
    r.power.budget = pb.budget;
    r.power.water_level = kNaN;
    r.power.p.resize(static_cast<std::size_t>(pb.users()));
    for (int j = 0; j < pb.users(); ++j)
        r.power.p[static_cast<std::size_t>(j)] = s(j) * s(j);
    r.objective = pa_objective(pb, r.split.rho, r.power.p);
    return r;
}

// Interior-point ascent over the powers alone. For fixed powers the best rho
// is the closed form, so the objective is
//   G(p) = sum_k max_rho f_k(rho, p),
// which is C^1 with a Hessian given by the Schur complement over users whose
// rho lies strictly inside (0, 1). Scaling p up never hurts, so the search
// stays on sum p = B and only p > 0 carries a barrier mu sum log p, with mu
// shrinking by 10x per stage. Steps live in the null space of the budget row.
class BarrierAscent {
public:
    BarrierAscent(const PaProblem& pb, int max_iters, double tol)
        : pb_(pb), users_(pb.users()), max_iters_(max_iters), tol_(tol), basis_(null_basis(pb.users()))
    {
    }

    struct Outcome {
        Eigen::VectorXd p;
        bool converged = false;
        int iterations = 0;
    };

    Outcome run(Eigen::VectorXd p) const
    {
        Outcome out;
        if (users_ == 1) {
            out.p = Eigen::VectorXd::Constant(1, pb_.budget);
            out.converged = true;
            return out;
        }
        const double scale = 1.0 + std::abs(value(p));
        double mu = 1e-2 * scale / users_;
        const double mu_end = 1e-15 * scale;
        const double step_tol = 1e-14 * pb_.budget;
        Eigen::VectorXd grad(users_);
        Eigen::MatrixXd hess(users_, users_);
        bool converged = false;
        while (out.iterations < max_iters_) {
            bool stage_done = false;
            for (int it = 0; it < kStageIters && out.iterations < max_iters_; ++it) {
                ++out.iterations;
                barrier_derivatives(p, mu, grad, hess);
                const Eigen::VectorXd rg = basis_.transpose() * grad;
                const Eigen::VectorXd dir = basis_ * ascent_direction(rg, basis_.transpose() * hess * basis_);
                const double decrement = grad.dot(dir);
                if (!(decrement > 0.0) || decrement <= 1e-3 * tol_ * tol_ * scale) {
                    stage_done = true;
                    break;
                }
                const double limit = max_step(p, dir);
                double t = std::min(1.0, 0.99 * limit);
                const double full = t;
                const double f0 = barrier_value(p, mu);
                Eigen::VectorXd trial = p + t * dir;
                double f1 = barrier_value(trial, mu);
                while (t > 1e-10 && !(f1 >= f0 + 1e-4 * t * decrement)) {
                    t *= 0.5;
                    trial = p + t * dir;
                    f1 = barrier_value(trial, mu);
                }
                if (t == full) {
                    // Along directions of wrong curvature a unit step is only
                    // a scaled gradient step; extend while it pays.
                    while (2.0 * t < 0.99 * limit) {
                        const Eigen::VectorXd longer = p + 2.0 * t * dir;
                        const double f2 = barrier_value(longer, mu);
                        if (!(f2 > f1))
                            break;
                        f1 = f2;
                        t *= 2.0;
                        trial = longer;
                    }
                }
                if (t <= 1e-10) {
                    // Value differences are lost in round-off here; fall back
                    // to a full step if it shrinks the reduced gradient.
                    t = full;
                    trial = p + t * dir;
                    Eigen::VectorXd g2(users_);
                    Eigen::MatrixXd h2(users_, users_);
                    barrier_derivatives(trial, mu, g2, h2);
                    if (!((basis_.transpose() * g2).norm() < rg.norm())) {
                        stage_done = true;
                        break;
                    }
                }
                p = trial;
                if (t * dir.norm() <= step_tol) {
                    stage_done = true;
                    break;
                }
            }
            if (mu <= mu_end) {
                converged = stage_done;
                break;
            }
            mu *= 0.1;
        }
        out.converged = converged;
        out.p = p;
        return out;
    }

    double value(const Eigen::VectorXd& p) const
    {
        const Eigen::VectorXd s = p.cwiseSqrt();
        double f = 0.0;
        for (int k = 0; k < users_; ++k) {
            const auto i = static_cast<std::size_t>(k);
            const UserSignal sig{p(k) * pb_.gain[i], s.dot(pb_.field_gram[i] * s)};
            const double rho = pso_closed_form(sig, pb_.alpha[i], pb_.beta[i], pb_.zeta, 1.0).rho;
            f += pso_user_objective(rho, sig, pb_.alpha[i], pb_.beta[i], pb_.zeta, 1.0);
        }
        return f;
    }

    // Gradient and Hessian of G with respect to p, for p > 0.
    void derivatives(const Eigen::VectorXd& p, Eigen::VectorXd& g, Eigen::MatrixXd& h) const
    {
        // work in s = sqrt(p), then apply the chain rule
        const int n = users_;
        const Eigen::VectorXd s = p.cwiseSqrt();
        Eigen::VectorXd gs = Eigen::VectorXd::Zero(n);
        Eigen::MatrixXd hs = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd cross(n);
        for (int k = 0; k < n; ++k) {
            const auto i = static_cast<std::size_t>(k);
            const double a = pb_.alpha[i];
            const double b = pb_.beta[i];
            const double gk = pb_.gain[i];
            const double sk = s(k);
            const Eigen::VectorXd y = pb_.field_gram[i] * s;
            const UserSignal sig{p(k) * gk, s.dot(y)};
            const double rho = pso_closed_form(sig, a, b, pb_.zeta, 1.0).rho;
            const double x = rho * gk * p(k);
            const double den = (1.0 + x) * std::numbers::ln2;
            const double den2 = (1.0 + x) * den;

            gs += 2.0 * b * (1.0 - rho) * pb_.zeta * y;
            gs(k) += a * 2.0 * rho * gk * sk / den;
            hs += 2.0 * b * (1.0 - rho) * pb_.zeta * pb_.field_gram[i];
            hs(k, k) += a * 2.0 * rho * gk * (1.0 - x) / den2;

            // rho moves with s when it is not clamped
            const double f_rr = -a * gk * gk * p(k) * p(k) / den2;
            if (rho > 0.0 && rho < 1.0 && f_rr < 0.0) {
                cross = -2.0 * b * pb_.zeta * y;
                cross(k) += a * 2.0 * gk * sk / den2;
                hs -= (cross * cross.transpose()) / f_rr;
            }
        }
        const Eigen::VectorXd ds = 0.5 * s.cwiseInverse();
        g = gs.cwiseProduct(ds);
        h = ds.asDiagonal() * hs * ds.asDiagonal();
        h.diagonal() -= 0.5 * g.cwiseQuotient(p);
    }

private:
    static constexpr int kStageIters = 100;

    // Orthonormal basis of {d : sum d = 0}.
    static Eigen::MatrixXd null_basis(int n)
    {
        if (n < 2)
            return Eigen::MatrixXd::Zero(n, 0);
        Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
        const Eigen::MatrixXd q = qr.householderQ();
        return q.rightCols(n - 1);
    }

    double barrier_value(const Eigen::VectorXd& p, double mu) const
    {
        if (!(p.array() > 0.0).all())
            return -std::numeric_limits<double>::infinity();
        return value(p) + mu * p.array().log().sum();
    }

    void barrier_derivatives(const Eigen::VectorXd& p, double mu, Eigen::VectorXd& g, Eigen::MatrixXd& h) const
    {
        derivatives(p, g, h);
        g.array() += mu / p.array();
        h.diagonal().array() -= mu / p.array().square();
    }

    // Newton direction on |H|: eigenvalues of the negated Hessian are
    // replaced by their magnitudes so the step always ascends.
    static Eigen::VectorXd ascent_direction(const Eigen::VectorXd& g, const Eigen::MatrixXd& h)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-h);
        if (es.info() != Eigen::Success)
            return g;
        const Eigen::VectorXd lambda = es.eigenvalues().cwiseAbs();
        const double floor = std::max(1e-12 * lambda.maxCoeff(), 1e-300);
        const Eigen::VectorXd inv = lambda.cwiseMax(floor).cwiseInverse();
        Eigen::VectorXd d = es.eigenvectors() * inv.asDiagonal() * (es.eigenvectors().transpose() * g);
        return d.allFinite() ? d : g;
    }

    double max_step(const Eigen::VectorXd& p, const Eigen::VectorXd& d) const
    {
        double t = std::numeric_limits<double>::infinity();
        for (int k = 0; k < users_; ++k)
            if (d(k) < 0.0)
                t = std::min(t, -p(k) / d(k));
        return t;
    }

    const PaProblem& pb_;
    int users_;
    int max_iters_;
    double tol_;
    Eigen::MatrixXd basis_;
};

// Strictly interior powers on the budget, proportional to p.
Eigen::VectorXd interior_start(const PaProblem& pb, std::span<const double> p)
{
    const int n = pb.users();
    Eigen::VectorXd q(n);
    for (int k = 0; k < n; ++k)
        q(k) = std::max(p[static_cast<std::size_t>(k)], 1e-3 * pb.budget / n);
    return q * (pb.budget / q.sum());
}

std::vector<double> dirichlet_powers(Rng& rng, int users, double budget)
{
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(static_cast<std::size_t>(users));
    double total = 0.0;
    for (auto& x : p) {
        x = expo(rng);
        total += x;
    }
    for (auto& x : p)
        x *= budget / total;
    return p;
}

}  // namespace

double PowerProfile::total() const
{
    return std::accumulate(p.begin(), p.end(), 0.0);
}

PaProblem make_pa_problem(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                          const RequirementWeights& weights, const NetworkConfig& cfg, PowerMode mode)
{
    cfg.validate();
    weights.validate();
    const int users = ch.users();
    if (weights.users() != users || cfg.users != users)
        throw DimensionError("weights, config and channel disagree on user count");
    if (mode == PowerMode::instantaneous && xi.size() != users)
        throw DimensionError("symbol vector length differs from user count");

    PaProblem pb;
    pb.alpha = weights.alpha;
    pb.beta = weights.beta;
    pb.zeta = cfg.zeta;
    pb.budget = users * cfg.p_t;
    pb.gain.resize(static_cast<std::size_t>(users));
    pb.field_gram.resize(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
        const auto i = static_cast<std::size_t>(k);
        pb.gain[i] = std::norm(effective_channel(ch, sol, k));
        Eigen::MatrixXcd cols(ch.rx_antennas(), users);
        for (int j = 0; j < users; ++j)
            cols.col(j) = ch.h(k, j) * sol.v[static_cast<std::size_t>(j)];
        if (mode == PowerMode::expected) {
            pb.field_gram[i] = cols.colwise().squaredNorm().transpose().asDiagonal();
        } else {
            cols = cols * xi.asDiagonal();
            pb.field_gram[i] = (cols.adjoint() * cols).real();
        }
    }
    return pb;
}

double pa_harvest(const PaProblem& problem, int k, std::span<const double> p)
{
    const Eigen::VectorXd s = to_amplitudes(p);
    return problem.zeta * s.dot(problem.field_gram[static_cast<std::size_t>(k)] * s);
}

double pa_objective(const PaProblem& problem, std::span<const double> rho, std::span<const double> p)
{
    const int users = problem.users();
    if (static_cast<int>(rho.size()) != users || static_cast<int>(p.size()) != users)
        throw DimensionError("rho or p has wrong length");
    double f = 0.0;
    for (int k = 0; k < users; ++k) {
        const auto i = static_cast<std::size_t>(k);
        f += problem.alpha[i] * std::log2(1.0 + rho[i] * p[i] * problem.gain[i]);
        f += problem.beta[i] * (1.0 - rho[i]) * pa_harvest(problem, k, p);
    }
    return f;
}

PaResult equal_power_baseline(const PaProblem& problem)
{
    check_problem(problem);
    const int n = problem.users();
    PaResult r = make_result(problem, Eigen::VectorXd::Constant(n, std::sqrt(problem.budget / n)));
    r.baseline_objective = r.objective;
    r.converged = true;
    return r;
}

PaResult solve_pso_pa(const PaProblem& problem, const PaOptions& opts)
{
    check_problem(problem);
    if (opts.restarts < 1)
        throw ConfigError("restarts must be >= 1");
    const int n = problem.users();

    PaResult best = equal_power_baseline(problem);
    const double baseline = best.objective;
    best.converged = false;

    // starts: equal power, water-filling, EH-only, then seeded random points
    std::vector<Eigen::VectorXd> starts;
    starts.push_back(interior_start(problem, best.power.p));
    if (opts.restarts > 1 && std::any_of(problem.gain.begin(), problem.gain.end(), [](double g) { return g > 0.0; }))
        starts.push_back(interior_start(problem, water_filling(problem.gain, problem.budget).p));
    if (static_cast<int>(starts.size()) < opts.restarts) {
        PaOptions eh_opts = opts;
        eh_opts.restarts = 2;
        starts.push_back(interior_start(problem, solve_eh_only_pa(problem, eh_opts).p));
    }
    Rng rng = make_rng(opts.seed, 0, Stream::pa_restarts);
    while (static_cast<int>(starts.size()) < opts.restarts)
        starts.push_back(interior_start(problem, dirichlet_powers(rng, n, problem.budget)));

    const BarrierAscent ascent(problem, opts.max_iters, opts.tol);
    bool all_converged = true;
    int iterations = 0;
    for (const auto& s0 : starts) {
        const BarrierAscent::Outcome o = ascent.run(s0);
        iterations += o.iterations;
        all_converged = all_converged && o.converged;
        PaResult candidate = make_result(problem, o.p.cwiseMax(0.0).cwiseSqrt());
        if (candidate.objective > best.objective)
            best = std::move(candidate);
    }
    best.baseline_objective = baseline;
    best.converged = all_converged;
    best.iterations = iterations;
    return best;
}

PaResult solve_pso_pa(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                      const RequirementWeights& weights, const NetworkConfig& cfg, const PaOptions& opts)
{
    return solve_pso_pa(make_pa_problem(ch, sol, xi, weights, cfg, opts.mode), opts);
}

PowerProfile water_filling(std::span<const double> gains, double budget)
{
    if (gains.empty())
        throw DimensionError("no users");
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw ConfigError("power budget must be positive");
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> inv(gains.size());
    double floor = inf;
    for (std::size_t k = 0; k < gains.size(); ++k) {
        if (gains[k] < 0.0 || !std::isfinite(gains[k]))
            throw DomainError("gains must be finite and nonnegative");
        inv[k] = gains[k] > 0.0 ? 1.0 / gains[k] : inf;
        floor = std::min(floor, inv[k]);
    }
    if (floor == inf)
        throw DegenerateError("water-filling needs at least one positive gain");

    auto filled = [&](double level) {
        double sum = 0.0;
        for (double x : inv)
            sum += std::max(level - x, 0.0);
        return sum;
    };
    double lo = floor;
    double hi = floor + budget;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (filled(mid) < budget ? lo : hi) = mid;
    }

    // exact level on the active set found by bisection
    double level = hi;
    for (std::size_t pass = 0; pass <= inv.size(); ++pass) {
        double sum_inv = 0.0;
        int active = 0;
        for (double x : inv)
            if (x < level) {
                sum_inv += x;
                ++active;
            }
        const double exact = (budget + sum_inv) / active;
        if (exact == level)
            break;
        level = exact;
    }

    PowerProfile out;
    out.budget = budget;
    out.water_level = level;
    out.p.resize(gains.size());
    for (std::size_t k = 0; k < inv.size(); ++k)
        out.p[k] = std::max(level - inv[k], 0.0);
    return out;
}

double eh_only_objective(const PaProblem& problem, std::span<const double> p)
{
    const Eigen::VectorXd s = to_amplitudes(p);
    return s.dot(total_gram(problem) * s);
}

PowerProfile solve_eh_only_pa(const PaProblem& problem, const PaOptions& opts)
{
    check_problem(problem);
    const int n = problem.users();
    const Eigen::MatrixXd a = total_gram(problem);
    const double radius = std::sqrt(problem.budget);

    // At a fixed point s is an eigenvector of A restricted to its support.
    // Solving that eigenproblem directly removes the linear tail of the
    // iteration.
    auto polish = [&](Eigen::VectorXd s, double value) {
        std::vector<int> support;
        for (int j = 0; j < n; ++j)
            if (s(j) > 1e-9 * radius)
                support.push_back(j);
        const auto m = static_cast<Eigen::Index>(support.size());
        Eigen::MatrixXd sub(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                sub(i, j) = a(support[static_cast<std::size_t>(i)], support[static_cast<std::size_t>(j)]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
        if (es.info() == Eigen::Success && m > 0) {
            Eigen::VectorXd e = es.eigenvectors().col(m - 1);
            if (e.sum() < 0.0)
                e = -e;
            if ((e.array() >= 0.0).all()) {
                Eigen::VectorXd cand = Eigen::VectorXd::Zero(n);
                for (Eigen::Index i = 0; i < m; ++i)
                    cand(support[static_cast<std::size_t>(i)]) = radius * e(i);
                const double cand_value = cand.dot(a * cand);
                if (cand_value > value)
                    return std::pair{cand, cand_value};
            }
        }
        return std::pair{s, value};
    };

    // s' = radius * max(A s, 0) / |max(A s, 0)| maximizes the linearization of
    // the convex objective s^T A s over the nonnegative ball, so each step
    // is an ascent step.
    auto ascend = [&](Eigen::VectorXd s) {
        double value = s.dot(a * s);
        for (int it = 0; it < opts.max_iters; ++it) {
            const Eigen::VectorXd grad = (a * s).cwiseMax(0.0);
            const double norm = grad.norm();
            if (!(norm > 0.0))
                break;
            const Eigen::VectorXd next = radius * grad / norm;
            const double next_value = next.dot(a * next);
            if (next_value <= value * (1.0 + opts.tol)) {
                if (next_value > value) {
                    s = next;
                    value = next_value;
                }
                break;
            }
            s = next;
            value = next_value;
        }
        return polish(s, value);
    };

    std::vector<Eigen::VectorXd> starts;
    starts.push_back(Eigen::VectorXd::Constant(n, radius / std::sqrt(static_cast<double>(n))));
    for (int j = 0; j < n; ++j)
        starts.push_back(radius * Eigen::VectorXd::Unit(n, j));
    Rng rng = make_rng(opts.seed, 1, Stream::pa_restarts);
    for (int r = 1; r < opts.restarts; ++r) {
        const std::vector<double> p = dirichlet_powers(rng, n, problem.budget);
        starts.push_back(to_amplitudes(p));
    }

    Eigen::VectorXd best_s = starts.front();
    double best_value = -std::numeric_limits<double>::infinity();
    for (const auto& s0 : starts) {
        auto [s, value] = ascend(s0);
        if (value > best_value) {
            best_value = value;
            best_s = s;
        }
    }

    PowerProfile out;
    out.budget = problem.budget;
    out.water_level = kNaN;
    out.p.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        out.p[static_cast<std::size_t>(j)] = best_s(j) * best_s(j);
    return out;
}

PowerProfile solve_eh_only_pa(const ChannelSet& ch, const IaSolution& sol, const SymbolVector& xi,
                              const NetworkConfig& cfg, const PaOptions& opts)
{
    const auto weights = RequirementWeights::uniform(cfg.users, 0.0);
    return solve_eh_only_pa(make_pa_problem(ch, sol, xi, weights, cfg, opts.mode), opts);
}

}  // namespace swipt
