/// engage/curvefit.hpp
///
/// Levenberg-Marquardt fit of the logistic curve
///
///     f(t) = 1 / (1 + exp(-alpha * (t - beta)))
///
/// to a normalized cumulative engagement series. The slope is optimized as
/// log(alpha) so it stays positive; standard errors come from
/// sigma^2 (J^T J)^-1 with sigma^2 = RSS / (n - 2), mapped back to alpha
/// with the delta method.

#ifndef ENGAGE_CURVEFIT_HPP_
#define ENGAGE_CURVEFIT_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "engage/error.hpp"
#include "engage/model.hpp"

namespace engage
{
    /// Logistic function, stable for large |alpha (t - beta)|: only the
    /// exponential of a non-positive argument is ever evaluated.
    inline double sigmoid(double t, double alpha, double beta) noexcept
    {
        const double z = alpha * (t - beta);
        if(z >= 0.0)
            return 1.0 / (1.0 + std::exp(-z));
        const double e = std::exp(z);
        return e / (1.0 + e);
    }

    /// Partial derivatives of sigmoid() w.r.t. (alpha, beta).
    inline std::pair<double, double> sigmoid_gradient(double t, double alpha, double beta) noexcept
    {
        const double f = sigmoid(t, alpha, beta);
        const double s = f * (1.0 - f);
        return {(t - beta) * s, -alpha * s};
    }

    struct FitOptions
    {
        enum class Init
        {
            FromSeries, ///< quantile read-off, see initial_guess()
            Explicit,   ///< use alpha0 / beta0 below
        };

        Init init = Init::FromSeries;
        double alpha0 = 0.01;
        double beta0 = 0.0;
        int max_iter = 200;
        double gradient_tolerance = 1e-10;
        double step_tolerance = 1e-12;
        double initial_damping = 1e-3;
        double damping_up = 10.0;
        double damping_down = 0.1;
    };

    struct FitResult
    {
        double alpha_hat = 0.0;
        double beta_hat = 0.0;
        double se_alpha = 0.0;
        double se_beta = 0.0;
        double rss = 0.0;
        std::size_t n_points = 0;
        bool converged = false;
        int iterations = 0;
        /// max-norm of J^T r in the internal (log alpha, beta) parametrization
        double gradient_norm = 0.0;
    };

    struct InitialGuess
    {
        double alpha0;
        double beta0;
    };

    /// beta0: first t with fraction >= 0.5. alpha0: 4 / (t90 - t10), clamped
    /// to [1e-5, 10], or 1.0 when the two quantiles coincide.
    inline InitialGuess initial_guess(std::span<const double> t, std::span<const double> y)
    {
        auto first_at = [&](double q) {
            for(std::size_t i = 0; i < y.size(); ++i)
                if(y[i] >= q)
                    return t[i];
            return t.empty() ? 0.0 : t.back();
        };
        const double t10 = first_at(0.10);
        const double t50 = first_at(0.50);
        const double t90 = first_at(0.90);
        double a0 = 1.0;
        if(t90 != t10)
            a0 = std::clamp(4.0 / (t90 - t10), 1e-5, 10.0);
        return {a0, t50};
    }

    inline InitialGuess initial_guess(const TopicSeries &series)
    {
        std::vector<double> t, y;
        t.reserve(series.bins.size());
        y.reserve(series.bins.size());
        for(const auto &b : series.bins)
        {
            t.push_back(b.t);
            y.push_back(b.cumulative_fraction);
        }
        return initial_guess(t, y);
    }

    namespace detail
    {
        struct Normal
        {
            double a00 = 0, a01 = 0, a11 = 0; // J^T J
            double g0 = 0, g1 = 0;            // J^T r
            double rss = 0;
        };

        // Residual r = f - y; Jacobian columns w.r.t. (u = log alpha, beta).
        inline Normal assemble(std::span<const double> t, std::span<const double> y, double u, double beta)
        {
            const double alpha = std::exp(u);
            Normal n;
            for(std::size_t i = 0; i < t.size(); ++i)
            {
                const double f = sigmoid(t[i], alpha, beta);
                const double s = f * (1.0 - f);
                const double ju = alpha * (t[i] - beta) * s;
                const double jb = -alpha * s;
                const double r = f - y[i];
                n.a00 += ju * ju;
                n.a01 += ju * jb;
                n.a11 += jb * jb;
                n.g0 += ju * r;
                n.g1 += jb * r;
                n.rss += r * r;
            }
            return n;
        }

        inline double rss_at(std::span<const double> t, std::span<const double> y, double u, double beta)
        {
            const double alpha = std::exp(u);
            double rss = 0;
            for(std::size_t i = 0; i < t.size(); ++i)
            {
                const double r = sigmoid(t[i], alpha, beta) - y[i];
                rss += r * r;
            }
            return rss;
        }
    }

    /// Fits (alpha, beta) to arbitrary points (t_i, y_i) by minimizing
    /// sum (y_i - f(t_i))^2. Non-convergence is reported in the result;
    /// a singular J^T J throws DegenerateFit.
    inline FitResult fit_points(std::span<const double> t, std::span<const double> y,
                                const FitOptions &options = {})
    {
        if(t.size() != y.size())
            fail(ErrorKind::InvalidInput, "t and y differ in length");
        if(t.size() < 3)
            fail(ErrorKind::InsufficientData, "at least 3 points are required for a 2-parameter fit");
        for(std::size_t i = 0; i < t.size(); ++i)
            if(!std::isfinite(t[i]) || !std::isfinite(y[i]))
                fail(ErrorKind::InvalidInput, "non-finite data point");

        InitialGuess g0 = options.init == FitOptions::Init::Explicit
                              ? InitialGuess{options.alpha0, options.beta0}
                              : initial_guess(t, y);
        if(!(g0.alpha0 > 0.0) || !std::isfinite(g0.beta0))
            fail(ErrorKind::InvalidInput, "initial alpha must be positive and beta finite");

        double u = std::log(g0.alpha0);
        double beta = g0.beta0;
        double lambda = options.initial_damping;

        auto singular = [](const detail::Normal &n) {
            const double det = n.a00 * n.a11 - n.a01 * n.a01;
            return !(n.a00 > 0.0) || !(n.a11 > 0.0) ||
                   !(det > 1e-14 * n.a00 * n.a11) || !std::isfinite(det);
        };

        detail::Normal n = detail::assemble(t, y, u, beta);
        if(singular(n))
            fail(ErrorKind::DegenerateFit, "J^T J is singular at the initial guess");

        FitResult res;
        res.n_points = t.size();
        int iter = 0;
        bool converged = false;
        while(true)
        {
            if(std::max(std::abs(n.g0), std::abs(n.g1)) < options.gradient_tolerance)
            {
                converged = true;
                break;
            }
            if(iter >= options.max_iter)
                break;
            ++iter;

            bool accepted = false;
            bool small_step = false;
            while(!accepted)
            {
                // (A + lambda diag(A)) delta = -g
                const double m00 = n.a00 * (1.0 + lambda);
                const double m11 = n.a11 * (1.0 + lambda);
                const double det = m00 * m11 - n.a01 * n.a01;
                const double du = (-n.g0 * m11 + n.g1 * n.a01) / det;
                const double db = (-n.g1 * m00 + n.g0 * n.a01) / det;

                const double step = std::hypot(du, db);
                const double scale = std::hypot(u, beta);
                if(step <= options.step_tolerance * (scale + options.step_tolerance))
                {
                    small_step = true;
                    break;
                }

                const double trial = detail::rss_at(t, y, u + du, beta + db);
                if(std::isfinite(trial) && trial < n.rss)
                {
                    u += du;
                    beta += db;
                    lambda = std::max(lambda * options.damping_down, 1e-15);
                    accepted = true;
                }
                else
                {
                    lambda *= options.damping_up;
                    if(lambda > 1e16)
                        break;
                }
            }
            if(!accepted)
            {
                // No further decrease is possible: a stationary point only if
                // the step collapsed, never because damping ran away.
                converged = small_step;
                break;
            }
            n = detail::assemble(t, y, u, beta);
            if(singular(n))
                fail(ErrorKind::DegenerateFit, "J^T J became singular during the fit");
        }

        const double alpha = std::exp(u);
        const double det = n.a00 * n.a11 - n.a01 * n.a01;
        const double dof = static_cast<double>(t.size()) - 2.0;
        const double sigma2 = n.rss / dof;
        const double var_u = sigma2 * n.a11 / det;
        const double var_b = sigma2 * n.a00 / det;

        res.alpha_hat = alpha;
        res.beta_hat = beta;
        res.se_alpha = alpha * std::sqrt(std::max(var_u, 0.0));
        res.se_beta = std::sqrt(std::max(var_b, 0.0));
        res.rss = n.rss;
        res.converged = converged && std::isfinite(res.se_alpha) && std::isfinite(res.se_beta);
        res.iterations = iter;
        res.gradient_norm = std::max(std::abs(n.g0), std::abs(n.g1));
        return res;
    }

    inline FitResult fit(const TopicSeries &series, const FitOptions &options = {})
    {
        if(series.bins.size() < 3)
            fail(ErrorKind::InsufficientData, "series has fewer than 3 bins");
        std::vector<double> t, y;
        t.reserve(series.bins.size());
        y.reserve(series.bins.size());
        for(const auto &b : series.bins)
        {
            t.push_back(b.t);
            y.push_back(b.cumulative_fraction);
        }
        return fit_points(t, y, options);
    }
}

#endif
