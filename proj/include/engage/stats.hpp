/// engage/stats.hpp
///
/// Nonparametric tests: Spearman rank correlation, Mann-Whitney U (exact
/// and normal approximation) and Bonferroni-corrected pairwise category
/// comparisons.

#ifndef ENGAGE_STATS_HPP_
#define ENGAGE_STATS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "engage/error.hpp"
#include "engage/model.hpp"

namespace engage
{
    /// Average (mid) ranks, 1-based. Tied values share the mean of the
    /// positions they occupy.
    inline std::vector<double> average_ranks(std::span<const double> v)
    {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
        std::vector<double> ranks(v.size());
        for(std::size_t i = 0; i < idx.size();)
        {
            std::size_t j = i;
            while(j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]])
                ++j;
            const double r = 0.5 * static_cast<double>(i + j) + 1.0;
            for(std::size_t k = i; k <= j; ++k)
                ranks[idx[k]] = r;
            i = j + 1;
        }
        return ranks;
    }

    struct CorrelationResult
    {
        double rho = 0.0;
        double p_value = 1.0;
        std::size_t n = 0;
    };

    /// Spearman's rho (Pearson correlation of average ranks) with a
    /// two-tailed p-value from the t approximation on n - 2 dof.
    inline CorrelationResult spearman(std::span<const double> x, std::span<const double> y)
    {
        if(x.size() != y.size())
            fail(ErrorKind::InvalidInput, "spearman: samples differ in length");
        if(x.size() < 3)
            fail(ErrorKind::InvalidInput, "spearman: at least 3 pairs are required");
        for(std::size_t i = 0; i < x.size(); ++i)
            if(!std::isfinite(x[i]) || !std::isfinite(y[i]))
                fail(ErrorKind::InvalidInput, "spearman: non-finite value");

        const auto rx = average_ranks(x);
        const auto ry = average_ranks(y);
        const double n = static_cast<double>(x.size());
        // mean rank is (n + 1) / 2 regardless of ties
        const double mean = 0.5 * (n + 1.0);
        double sxy = 0, sxx = 0, syy = 0;
        for(std::size_t i = 0; i < rx.size(); ++i)
        {
            const double dx = rx[i] - mean;
            const double dy = ry[i] - mean;
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
        if(sxx == 0.0 || syy == 0.0)
            fail(ErrorKind::UndefinedCorrelation, "spearman: a sample has zero rank variance");

        CorrelationResult res;
        res.n = x.size();
        res.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
        if(std::abs(res.rho) >= 1.0)
        {
            res.p_value = 0.0;
            return res;
        }
        const double dof = n - 2.0;
        const double t = res.rho * std::sqrt(dof / (1.0 - res.rho * res.rho));
        boost::math::students_t dist(dof);
        res.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
        return res;
    }

    enum class UMode
    {
        Exact,
        NormalApprox,
        Auto,
    };

    enum class Alternative
    {
        TwoSided,
        Greater, ///< x tends to exceed y (large U)
        Less,    ///< x tends to fall below y (small U)
    };

    struct MannWhitneyResult
    {
        double U = 0.0; ///< U of the first sample: #(x > y) + 0.5 #(x == y)
        double p_value = 1.0;
        bool exact = false;
    };

    inline constexpr std::size_t exact_u_limit = 8;

    namespace detail
    {
        inline bool has_ties(std::span<const double> all)
        {
            std::vector<double> s(all.begin(), all.end());
            std::sort(s.begin(), s.end());
            return std::adjacent_find(s.begin(), s.end()) != s.end();
        }

        inline double tail_p(double lower, double upper, Alternative alt)
        {
            switch(alt)
            {
            case Alternative::Greater: return std::min(upper, 1.0);
            case Alternative::Less:    return std::min(lower, 1.0);
            case Alternative::TwoSided: break;
            }
            return std::min(1.0, 2.0 * std::min(lower, upper));
        }
    }

    /// Mann-Whitney U. Exact mode counts every assignment of the pooled
    /// (mid)ranks to the first sample by dynamic programming over doubled
    /// ranks, so it stays exact in the presence of ties. Auto uses the exact
    /// null when both samples have at most 8 values and there are no ties,
    /// otherwise the tie-corrected normal approximation with continuity
    /// correction.
    inline MannWhitneyResult mann_whitney_u(std::span<const double> x, std::span<const double> y,
                                            UMode mode = UMode::Auto,
                                            Alternative alt = Alternative::TwoSided)
    {
        if(x.empty() || y.empty())
            fail(ErrorKind::InvalidInput, "mann_whitney_u: empty sample");
        std::vector<double> all(x.begin(), x.end());
        all.insert(all.end(), y.begin(), y.end());
        for(double v : all)
            if(std::isnan(v))
                fail(ErrorKind::InvalidInput, "mann_whitney_u: NaN value");

        const std::size_t n1 = x.size(), n2 = y.size(), N = n1 + n2;
        const auto ranks = average_ranks(all);
        // doubled midranks are integers
        std::vector<long> r2(N);
        for(std::size_t i = 0; i < N; ++i)
            r2[i] = std::lround(2.0 * ranks[i]);
        long r2x = 0;
        for(std::size_t i = 0; i < n1; ++i)
            r2x += r2[i];
        const long base2 = static_cast<long>(n1 * (n1 + 1));
        MannWhitneyResult res;
        res.U = 0.5 * static_cast<double>(r2x - base2);

        bool use_exact = mode == UMode::Exact;
        if(mode == UMode::Auto)
            use_exact = n1 <= exact_u_limit && n2 <= exact_u_limit && !detail::has_ties(all);

        if(use_exact)
        {
            if(N > 64)
                fail(ErrorKind::InvalidInput, "mann_whitney_u: exact mode supports at most 64 observations");
            const long max_sum = static_cast<long>(N * (N + 1));
            // ways[k][s]: subsets of size k whose doubled rank sum is s
            std::vector<std::vector<long double>> ways(n1 + 1, std::vector<long double>(max_sum + 1, 0.0L));
            ways[0][0] = 1.0L;
            for(std::size_t i = 0; i < N; ++i)
                for(std::size_t k = std::min(i + 1, n1); k >= 1; --k)
                    for(long s = max_sum; s >= r2[i]; --s)
                        ways[k][s] += ways[k - 1][s - r2[i]];
            long double total = 0, lower = 0, upper = 0;
            for(long s = 0; s <= max_sum; ++s)
            {
                const long double w = ways[n1][s];
                total += w;
                if(s <= r2x)
                    lower += w;
                if(s >= r2x)
                    upper += w;
            }
            res.exact = true;
            res.p_value = detail::tail_p(static_cast<double>(lower / total), static_cast<double>(upper / total), alt);
            return res;
        }

        const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2), dN = static_cast<double>(N);
        const double mu = 0.5 * dn1 * dn2;
        double tie_term = 0.0;
        {
            std::vector<double> s = all;
            std::sort(s.begin(), s.end());
            for(std::size_t i = 0; i < s.size();)
            {
                std::size_t j = i;
                while(j + 1 < s.size() && s[j + 1] == s[i])
                    ++j;
                const double tcount = static_cast<double>(j - i + 1);
                tie_term += tcount * tcount * tcount - tcount;
                i = j + 1;
            }
        }
        const double var = dN > 1.0 ? dn1 * dn2 / 12.0 * ((dN + 1.0) - tie_term / (dN * (dN - 1.0))) : 0.0;
        if(!(var > 0.0))
        {
            res.p_value = 1.0;
            return res;
        }
        const double sd = std::sqrt(var);
        auto upper_tail = [](double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); };
        const double lower = 1.0 - upper_tail((res.U - mu + 0.5) / sd);
        const double upper = upper_tail((res.U - mu - 0.5) / sd);
        res.p_value = detail::tail_p(std::clamp(lower, 0.0, 1.0), std::clamp(upper, 0.0, 1.0), alt);
        return res;
    }

    // ------------------------------------------------------------ pairwise tests

    enum class Metric
    {
        Alpha,
        Beta,
        SpeedIndex,
        LoveHate,
    };

    inline constexpr std::array<Metric, 4> all_metrics = {Metric::Alpha, Metric::Beta, Metric::SpeedIndex,
                                                          Metric::LoveHate};

    inline std::string_view to_string(Metric m)
    {
        switch(m)
        {
        case Metric::Alpha:      return "alpha";
        case Metric::Beta:       return "beta";
        case Metric::SpeedIndex: return "speed_index";
        case Metric::LoveHate:   return "love_hate";
        }
        return "";
    }

    /// The rounded threshold used in the literature next to the exact
    /// Bonferroni value; both are reported.
    inline constexpr double fixed_threshold = 0.001;

    struct PairwiseTestMatrix
    {
        std::string metric_name;
        std::vector<Category> categories;
        std::vector<std::size_t> group_sizes;
        /// Symmetric; diagonal entries are empty.
        std::vector<std::vector<std::optional<double>>> p_values;
        double alpha_level = 0.05;
        double corrected_threshold = 0.0;
        std::size_t n_pairs = 0;
        double frac_significant = 0.0;       ///< p < corrected_threshold
        double frac_significant_fixed = 0.0; ///< p < fixed_threshold
        std::vector<std::string> warnings;
    };

    /// Two-sided Mann-Whitney U between every pair of categories, with
    /// Bonferroni threshold alpha_level / #pairs. A topic carrying several
    /// categories contributes to each of them; categories with fewer than
    /// two topics are dropped with a warning.
    inline PairwiseTestMatrix pairwise_category_tests(const std::map<std::string, double> &values,
                                                      std::span<const CategoryAssignment> assignments,
                                                      std::string_view metric_name, double alpha_level = 0.05,
                                                      Alternative alt = Alternative::TwoSided)
    {
        if(!(alpha_level > 0.0 && alpha_level < 1.0))
            fail(ErrorKind::InvalidInput, "alpha level must lie in (0, 1)");

        std::map<Category, std::vector<double>> groups;
        for(const auto &a : assignments)
        {
            auto it = values.find(a.topic_id);
            if(it == values.end())
                continue;
            for(auto c : a.categories)
                groups[c].push_back(it->second);
        }

        PairwiseTestMatrix m;
        m.metric_name = std::string(metric_name);
        m.alpha_level = alpha_level;
        for(auto c : all_categories)
        {
            auto it = groups.find(c);
            if(it == groups.end())
                continue;
            if(it->second.size() < 2)
            {
                m.warnings.push_back("category " + std::string(to_string(c)) + " has fewer than 2 topics; excluded");
                continue;
            }
            m.categories.push_back(c);
            m.group_sizes.push_back(it->second.size());
        }
        const std::size_t k = m.categories.size();
        if(k < 2)
            fail(ErrorKind::InvalidInput, "pairwise tests need at least 2 categories with 2 or more topics");

        m.n_pairs = k * (k - 1) / 2;
        m.corrected_threshold = alpha_level / static_cast<double>(m.n_pairs);
        m.p_values.assign(k, std::vector<std::optional<double>>(k));
        std::size_t sig = 0, sig_fixed = 0;
        for(std::size_t i = 0; i < k; ++i)
            for(std::size_t j = i + 1; j < k; ++j)
            {
                const auto &gi = groups[m.categories[i]];
                const auto &gj = groups[m.categories[j]];
                const double p = mann_whitney_u(gi, gj, UMode::Auto, alt).p_value;
                m.p_values[i][j] = p;
                m.p_values[j][i] = p;
                sig += p < m.corrected_threshold;
                sig_fixed += p < fixed_threshold;
            }
        m.frac_significant = static_cast<double>(sig) / static_cast<double>(m.n_pairs);
        m.frac_significant_fixed = static_cast<double>(sig_fixed) / static_cast<double>(m.n_pairs);
        return m;
    }
}

#endif
