/// engage/synth.hpp
///
/// Synthetic post streams with a known logistic engagement law. Post times
/// are drawn from the logistic distribution truncated to [0, T] by inverse
/// CDF sampling; every post has the same expected engagement, so the time
/// density alone shapes the cumulative curve.

#ifndef ENGAGE_SYNTH_HPP_
#define ENGAGE_SYNTH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "engage/curvefit.hpp"
#include "engage/error.hpp"
#include "engage/metrics.hpp"
#include "engage/model.hpp"
#include "engage/parallel.hpp"
#include "engage/timeutil.hpp"

namespace engage
{
    struct SynthSpec
    {
        std::string topic_id;
        double alpha_true = 0.005;
        double beta_true = 800.0;
        double horizon_T = 1600.0;        ///< days
        std::size_t n_posts = 1000;
        double engagement_law = 50.0;     ///< Poisson mean of likes+shares+comments per post
        double lh_target = 0.0;
        double reaction_rate = 5.0;       ///< Poisson mean of love+angry per post
        std::uint64_t noise_seed = 0;
        Instant start = std::chrono::sys_days{std::chrono::year{2018} / 1 / 1};
    };

    inline void validate(const SynthSpec &s)
    {
        if(s.topic_id.empty())
            fail(ErrorKind::InvalidInput, "synth spec: empty topic_id");
        if(!(s.alpha_true > 0.0) || !std::isfinite(s.alpha_true))
            fail(ErrorKind::InvalidInput, "synth spec '" + s.topic_id + "': alpha must be positive");
        if(!std::isfinite(s.beta_true))
            fail(ErrorKind::InvalidInput, "synth spec '" + s.topic_id + "': beta must be finite");
        if(!(s.horizon_T > 0.0) || !std::isfinite(s.horizon_T))
            fail(ErrorKind::InvalidInput, "synth spec '" + s.topic_id + "': horizon must be positive");
        if(s.n_posts < 2)
            fail(ErrorKind::InvalidInput, "synth spec '" + s.topic_id + "': n_posts must be at least 2");
        if(!(s.engagement_law > 0.0))
            fail(ErrorKind::InvalidInput, "synth spec '" + s.topic_id + "': engagement mean must be positive");
        if(!(s.lh_target >= -1.0 && s.lh_target <= 1.0))
            fail(ErrorKind::InvalidInput, "synth spec '" + s.topic_id + "': lh_target must lie in [-1, 1]");
        if(!(s.reaction_rate >= 0.0))
            fail(ErrorKind::InvalidInput, "synth spec '" + s.topic_id + "': reaction_rate must be non-negative");
    }

    namespace detail
    {
        inline std::uint64_t fnv1a(std::string_view s)
        {
            std::uint64_t h = 1469598103934665603ull;
            for(unsigned char c : s)
            {
                h ^= c;
                h *= 1099511628211ull;
            }
            return h;
        }

        inline std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ull;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            return x ^ (x >> 31);
        }
    }

    /// Independent stream per (seed, topic), so worker count never matters.
    inline std::mt19937_64 topic_rng(std::uint64_t seed, std::string_view topic_id)
    {
        return std::mt19937_64(detail::splitmix64(seed ^ detail::splitmix64(detail::fnv1a(topic_id))));
    }

    /// Sorted post times in days on [0, T].
    inline std::vector<double> sample_times(const SynthSpec &spec, std::mt19937_64 &rng)
    {
        validate(spec);
        const double lo = sigmoid(0.0, spec.alpha_true, spec.beta_true);
        const double hi = sigmoid(spec.horizon_T, spec.alpha_true, spec.beta_true);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> times(spec.n_posts);
        for(auto &t : times)
        {
            const double u = lo + unif(rng) * (hi - lo);
            double x = spec.beta_true + (std::log(u) - std::log1p(-u)) / spec.alpha_true;
            if(!std::isfinite(x))
                x = u < 0.5 ? 0.0 : spec.horizon_T;
            t = std::clamp(x, 0.0, spec.horizon_T);
        }
        std::sort(times.begin(), times.end());
        return times;
    }

    inline std::vector<double> sample_times(const SynthSpec &spec)
    {
        auto rng = topic_rng(spec.noise_seed, spec.topic_id);
        return sample_times(spec, rng);
    }

    /// One post per sampled time. Interactions ~ Poisson(engagement_law)
    /// split uniformly over likes/shares/comments; reactions ~
    /// Poisson(reaction_rate), each Love with probability (1 + lh_target)/2.
    inline std::vector<PostRecord> generate_topic(const SynthSpec &spec)
    {
        auto rng = topic_rng(spec.noise_seed, spec.topic_id);
        const auto times = sample_times(spec, rng);

        std::poisson_distribution<std::uint64_t> interactions(spec.engagement_law);
        const double p_love = std::clamp((1.0 + spec.lh_target) / 2.0, 0.0, 1.0);
        const auto max_secs = static_cast<std::int64_t>(std::floor(spec.horizon_T * seconds_per_day));

        std::vector<PostRecord> posts;
        posts.reserve(times.size());
        for(std::size_t i = 0; i < times.size(); ++i)
        {
            PostRecord p;
            char id[32];
            std::snprintf(id, sizeof(id), "-%06zu", i);
            p.post_id = spec.topic_id + id;
            p.topic_id = spec.topic_id;
            auto secs = std::clamp<std::int64_t>(std::llround(times[i] * seconds_per_day), 0, max_secs);
            p.timestamp = spec.start + std::chrono::seconds{secs};

            const std::uint64_t n = interactions(rng);
            std::binomial_distribution<std::uint64_t> first(n, 1.0 / 3.0);
            p.likes = first(rng);
            std::binomial_distribution<std::uint64_t> second(n - p.likes, 0.5);
            p.shares = second(rng);
            p.comments = n - p.likes - p.shares;

            std::uint64_t reactions = 0;
            if(spec.reaction_rate > 0.0)
                reactions = std::poisson_distribution<std::uint64_t>(spec.reaction_rate)(rng);
            std::binomial_distribution<std::uint64_t> loves(reactions, p_love);
            p.love = loves(rng);
            p.angry = reactions - p.love;
            posts.push_back(std::move(p));
        }
        return posts;
    }

    using CategoryMap = std::map<std::string, std::set<Category>>;

    struct Corpus
    {
        std::string posts_jsonl;
        std::string categories_csv;
    };

    /// Generates every topic (in parallel when jobs > 1) and serializes the
    /// posts as JSON-lines and the categories as CSV, in spec order.
    inline Corpus generate_corpus(std::span<const SynthSpec> specs, const CategoryMap &category_map,
                                  unsigned jobs = 1)
    {
        std::set<std::string> seen;
        for(const auto &s : specs)
        {
            validate(s);
            if(!seen.insert(s.topic_id).second)
                fail(ErrorKind::InvalidInput, "duplicate topic_id '" + s.topic_id + "'");
        }

        std::vector<std::string> chunks(specs.size());
        parallel_for(specs.size(), jobs, [&](std::size_t i) {
            std::string out;
            for(const auto &p : generate_topic(specs[i]))
            {
                out += to_jsonl(p);
                out += '\n';
            }
            chunks[i] = std::move(out);
        });

        Corpus c;
        for(auto &chunk : chunks)
            c.posts_jsonl += chunk;
        std::vector<CategoryAssignment> assignments;
        for(const auto &s : specs)
        {
            auto it = category_map.find(s.topic_id);
            if(it != category_map.end() && !it->second.empty())
                assignments.push_back({s.topic_id, it->second});
        }
        c.categories_csv = to_csv(assignments);
        return c;
    }

    /// Parameters of a randomly designed corpus. The default ranges mimic
    /// the empirical regime of slow growth (alpha in [0.001, 0.005]) with
    /// late half-saturation (beta in [600, 1000]) on a 1600-day window. The
    /// Love-Hate target falls linearly with the designed Speed Index.
    struct RandomCorpusConfig
    {
        std::size_t count = 50;
        double alpha_min = 0.001, alpha_max = 0.005;
        double beta_min = 600.0, beta_max = 1000.0;
        double horizon_T = 1600.0;
        std::size_t n_posts = 1000;
        double engagement_law = 50.0;
        double reaction_rate = 5.0;
        double lh_intercept = 0.2;  ///< LH target at SI = 0.5
        double lh_slope = -2.0;     ///< d(LH target)/d(SI)
        double lh_noise = 0.1;      ///< sd of the Gaussian jitter added to the target
        std::size_t max_categories = 2;
        Instant start = std::chrono::sys_days{std::chrono::year{2018} / 1 / 1};
    };

    struct DesignedCorpus
    {
        std::vector<SynthSpec> specs;
        CategoryMap categories;
    };

    inline DesignedCorpus random_corpus(const RandomCorpusConfig &cfg, std::uint64_t seed)
    {
        if(cfg.max_categories < 1 || cfg.max_categories > all_categories.size())
            fail(ErrorKind::InvalidInput, "max_categories must lie in [1, 10]");
        std::mt19937_64 rng(detail::splitmix64(seed ^ 0x5eed5eed5eedull));
        std::uniform_real_distribution<double> ua(cfg.alpha_min, cfg.alpha_max);
        std::uniform_real_distribution<double> ub(cfg.beta_min, cfg.beta_max);
        std::normal_distribution<double> jitter(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> ncat(1, cfg.max_categories);
        std::uniform_int_distribution<std::size_t> pick(0, all_categories.size() - 1);

        DesignedCorpus out;
        const int width = cfg.count < 1000 ? 3 : static_cast<int>(std::to_string(cfg.count - 1).size());
        for(std::size_t i = 0; i < cfg.count; ++i)
        {
            SynthSpec s;
            char id[32];
            std::snprintf(id, sizeof(id), "topic_%0*zu", width, i);
            s.topic_id = id;
            s.alpha_true = ua(rng);
            s.beta_true = ub(rng);
            s.horizon_T = cfg.horizon_T;
            s.n_posts = cfg.n_posts;
            s.engagement_law = cfg.engagement_law;
            s.reaction_rate = cfg.reaction_rate;
            s.noise_seed = seed;
            s.start = cfg.start;
            const double si = speed_index(s.alpha_true, s.beta_true, s.horizon_T);
            s.lh_target = std::clamp(cfg.lh_intercept + cfg.lh_slope * (si - 0.5) + cfg.lh_noise * jitter(rng),
                                     -1.0, 1.0);

            std::set<Category> cats;
            const auto k = ncat(rng);
            while(cats.size() < k)
                cats.insert(all_categories[pick(rng)]);
            out.categories[s.topic_id] = std::move(cats);
            out.specs.push_back(std::move(s));
        }
        return out;
    }

    namespace detail
    {
        template<typename T>
        T get_or(const nlohmann::json &j, const char *key, T fallback)
        {
            if(!j.contains(key))
                return fallback;
            return j.at(key).get<T>();
        }
    }

    /// Reads a corpus specification:
    ///
    ///   { "seed": 7, "start": "2018-01-01T00:00:00Z",
    ///     "topics": [ { "topic_id": "t1", "alpha": 0.004, "beta": 700,
    ///                   "horizon_days": 1600, "n_posts": 1000,
    ///                   "engagement_mean": 50, "lh_target": 0.1,
    ///                   "reaction_rate": 5, "categories": ["Health"] } ],
    ///     "random_topics": { "count": 50, ... RandomCorpusConfig fields } }
    ///
    /// Either block may be omitted. `seed_override`, when set, replaces the
    /// file's seed for every stream.
    inline DesignedCorpus parse_corpus_spec(const nlohmann::json &j, std::optional<std::uint64_t> seed_override = {})
    {
        try
        {
            if(!j.is_object())
                fail(ErrorKind::InvalidInput, "corpus spec must be a JSON object");
            const std::uint64_t seed = seed_override.value_or(detail::get_or<std::uint64_t>(j, "seed", 0));
            Instant start = std::chrono::sys_days{std::chrono::year{2018} / 1 / 1};
            if(j.contains("start"))
            {
                auto t = parse_rfc3339(j.at("start").get<std::string>());
                if(!t)
                    fail(ErrorKind::InvalidInput, "corpus spec: 'start' is not RFC 3339");
                start = *t;
            }

            DesignedCorpus out;
            if(j.contains("topics"))
            {
                for(const auto &t : j.at("topics"))
                {
                    SynthSpec s;
                    s.topic_id = t.at("topic_id").get<std::string>();
                    s.alpha_true = t.at("alpha").get<double>();
                    s.beta_true = t.at("beta").get<double>();
                    s.horizon_T = detail::get_or<double>(t, "horizon_days", s.horizon_T);
                    s.n_posts = detail::get_or<std::size_t>(t, "n_posts", s.n_posts);
                    s.engagement_law = detail::get_or<double>(t, "engagement_mean", s.engagement_law);
                    s.lh_target = detail::get_or<double>(t, "lh_target", s.lh_target);
                    s.reaction_rate = detail::get_or<double>(t, "reaction_rate", s.reaction_rate);
                    s.noise_seed = seed;
                    s.start = start;
                    validate(s);
                    std::set<Category> cats;
                    if(t.contains("categories"))
                        for(const auto &c : t.at("categories"))
                        {
                            auto cat = parse_category(c.get<std::string>());
                            if(!cat)
                                fail(ErrorKind::InvalidInput, "unknown category '" + c.get<std::string>() + "'");
                            cats.insert(*cat);
                        }
                    out.categories[s.topic_id] = std::move(cats);
                    out.specs.push_back(std::move(s));
                }
            }
            if(j.contains("random_topics"))
            {
                const auto &r = j.at("random_topics");
                RandomCorpusConfig cfg;
                cfg.count = detail::get_or(r, "count", cfg.count);
                cfg.alpha_min = detail::get_or(r, "alpha_min", cfg.alpha_min);
                cfg.alpha_max = detail::get_or(r, "alpha_max", cfg.alpha_max);
                cfg.beta_min = detail::get_or(r, "beta_min", cfg.beta_min);
                cfg.beta_max = detail::get_or(r, "beta_max", cfg.beta_max);
                cfg.horizon_T = detail::get_or(r, "horizon_days", cfg.horizon_T);
                cfg.n_posts = detail::get_or(r, "n_posts", cfg.n_posts);
                cfg.engagement_law = detail::get_or(r, "engagement_mean", cfg.engagement_law);
                cfg.reaction_rate = detail::get_or(r, "reaction_rate", cfg.reaction_rate);
                cfg.lh_intercept = detail::get_or(r, "lh_intercept", cfg.lh_intercept);
                cfg.lh_slope = detail::get_or(r, "lh_slope", cfg.lh_slope);
                cfg.lh_noise = detail::get_or(r, "lh_noise", cfg.lh_noise);
                cfg.max_categories = detail::get_or(r, "max_categories", cfg.max_categories);
                cfg.start = start;
                if(!(cfg.alpha_min > 0.0 && cfg.alpha_min <= cfg.alpha_max) || !(cfg.beta_min <= cfg.beta_max))
                    fail(ErrorKind::InvalidInput, "random_topics: invalid parameter ranges");
                auto rnd = random_corpus(cfg, seed);
                for(auto &s : rnd.specs)
                {
                    validate(s);
                    out.categories[s.topic_id] = rnd.categories[s.topic_id];
                    out.specs.push_back(std::move(s));
                }
            }
            if(out.specs.empty())
                fail(ErrorKind::InvalidInput, "corpus spec defines no topics");
            return out;
        }
        catch(const nlohmann::json::exception &e)
        {
            fail(ErrorKind::InvalidInput, std::string("corpus spec: ") + e.what());
        }
    }
}

#endif
