/// engage/metrics.hpp
///
/// Speed Index (time-normalized area under the fitted logistic curve) and
/// the Love-Hate reaction score.

#ifndef ENGAGE_METRICS_HPP_
#define ENGAGE_METRICS_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "engage/curvefit.hpp"
#include "engage/error.hpp"
#include "engage/model.hpp"

namespace engage
{
    /// ln(1 + e^x) without overflow.
    inline double softplus(double x) noexcept
    {
        if(x > 0.0)
            return x + std::log1p(std::exp(-x));
        return std::log1p(std::exp(x));
    }

    /// Mean of sigmoid(t, alpha, beta) over [0, T], in closed form:
    /// [ln(1 + e^{alpha (T - beta)}) - ln(1 + e^{-alpha beta})] / (alpha T).
    inline double speed_index(double alpha, double beta, double T)
    {
        if(!(alpha > 0.0) || !(T > 0.0) || !std::isfinite(alpha) || !std::isfinite(T) || !std::isfinite(beta))
            fail(ErrorKind::DomainError, "speed_index requires alpha > 0, T > 0 and finite beta");
        const double si = (softplus(alpha * (T - beta)) - softplus(-alpha * beta)) / (alpha * T);
        return std::clamp(si, 0.0, 1.0);
    }

    namespace detail
    {
        template<typename F>
        double simpson_recurse(const F &f, double a, double b, double fa, double fm, double fb,
                               double whole, double tol, int depth)
        {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if(depth <= 0 || std::abs(delta) <= 15.0 * tol)
                return left + right + delta / 15.0;
            return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    }

    /// Adaptive Simpson integral of f over [a, b] with absolute tolerance tol.
    template<typename F>
    double adaptive_simpson(const F &f, double a, double b, double tol, int max_depth = 60)
    {
        const double fa = f(a);
        const double fb = f(b);
        const double fm = f(0.5 * (a + b));
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
    }

    /// Speed Index by numerical quadrature; `tol` bounds the error of the
    /// returned mean. The interval is split at beta (when inside [0, T]) so
    /// the initial Simpson panel never straddles a steep transition blindly.
    inline double speed_index_quadrature(double alpha, double beta, double T, double tol = 1e-10)
    {
        if(!(alpha > 0.0) || !(T > 0.0) || !std::isfinite(alpha) || !std::isfinite(T) || !std::isfinite(beta))
            fail(ErrorKind::DomainError, "speed_index requires alpha > 0, T > 0 and finite beta");
        if(!(tol > 0.0))
            fail(ErrorKind::DomainError, "quadrature tolerance must be positive");
        auto f = [&](double t) { return sigmoid(t, alpha, beta); };
        const double abs_tol = tol * T;
        double area = 0.0;
        if(beta > 0.0 && beta < T)
            area = adaptive_simpson(f, 0.0, beta, 0.5 * abs_tol) + adaptive_simpson(f, beta, T, 0.5 * abs_tol);
        else
            area = adaptive_simpson(f, 0.0, T, abs_tol);
        return area / T;
    }

    enum class LoveHateMode
    {
        Pooled,
        MeanOfPosts,
    };

    inline std::string_view to_string(LoveHateMode m)
    {
        return m == LoveHateMode::Pooled ? "pooled" : "mean";
    }

    /// (love - angry) / (love + angry). Pooled mode applies it to the topic
    /// totals; mean-of-posts averages the per-post scores over posts with at
    /// least one reaction. nullopt when no reaction exists.
    inline std::optional<double> love_hate(std::span<const PostRecord> posts, LoveHateMode mode = LoveHateMode::Pooled)
    {
        if(posts.empty())
            return std::nullopt;
        for(const auto &p : posts)
            if(p.topic_id != posts.front().topic_id)
                fail(ErrorKind::InvalidInput, "love_hate expects posts of a single topic");

        if(mode == LoveHateMode::Pooled)
        {
            std::uint64_t love = 0, angry = 0;
            for(const auto &p : posts)
            {
                love += p.love;
                angry += p.angry;
            }
            if(love + angry == 0)
                return std::nullopt;
            return (static_cast<double>(love) - static_cast<double>(angry)) / static_cast<double>(love + angry);
        }

        double sum = 0.0;
        std::size_t used = 0;
        for(const auto &p : posts)
        {
            if(p.love + p.angry == 0)
                continue;
            sum += (static_cast<double>(p.love) - static_cast<double>(p.angry)) / static_cast<double>(p.love + p.angry);
            ++used;
        }
        if(used == 0)
            return std::nullopt;
        return sum / static_cast<double>(used);
    }

    struct TopicMetrics
    {
        std::string topic_id;
        double speed_index = 0.0;
        std::optional<double> lh_score;
        std::size_t lh_posts_used = 0;
        std::uint64_t total_love = 0;
        std::uint64_t total_angry = 0;
        std::size_t n_posts = 0;
    };

    /// Metrics of one topic from its fitted curve and its posts. The SI
    /// horizon is the series' last observed bin.
    inline TopicMetrics topic_metrics(const TopicSeries &series, const FitResult &fit,
                                      std::span<const PostRecord> posts, LoveHateMode mode = LoveHateMode::Pooled)
    {
        TopicMetrics m;
        m.topic_id = series.topic_id;
        m.speed_index = speed_index(fit.alpha_hat, fit.beta_hat, series.horizon_T);
        m.lh_score = love_hate(posts, mode);
        m.n_posts = posts.size();
        for(const auto &p : posts)
        {
            m.total_love += p.love;
            m.total_angry += p.angry;
            if(p.love + p.angry > 0)
                ++m.lh_posts_used;
        }
        return m;
    }
}

#endif
