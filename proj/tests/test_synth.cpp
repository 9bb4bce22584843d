#include <cmath>

#include <gtest/gtest.h>

#include "engage/metrics.hpp"
#include "engage/synth.hpp"

using namespace engage;

namespace
{
    SynthSpec spec_with(double alpha, double beta, double T, std::size_t n, std::uint64_t seed = 1)
    {
        SynthSpec s;
        s.topic_id = "topic";
        s.alpha_true = alpha;
        s.beta_true = beta;
        s.horizon_T = T;
        s.n_posts = n;
        s.noise_seed = seed;
        return s;
    }

    std::uint64_t sum_love(const std::vector<PostRecord> &p)
    {
        std::uint64_t s = 0;
        for(const auto &x : p)
            s += x.love;
        return s;
    }
}

TEST(SampleTimes, KolmogorovSmirnovAgainstTruncatedLogistic)
{
    for(auto [a, b] : {std::pair{0.005, 300.0}, {0.003, 200.0}, {0.05, 900.0}})
    {
        auto s = spec_with(a, b, 1000, 100000, 42);
        auto t = sample_times(s);
        const double lo = sigmoid(0, a, b), hi = sigmoid(1000, a, b);
        const double n = static_cast<double>(t.size());
        double d = 0;
        for(std::size_t i = 0; i < t.size(); ++i)
        {
            const double cdf = (sigmoid(t[i], a, b) - lo) / (hi - lo);
            d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
        }
        EXPECT_LT(d, 0.01) << a << " " << b;
    }
}

TEST(SampleTimes, SteepCurveConcentratesAtMidpoint)
{
    auto s = spec_with(5.0, 500, 1000, 5000);
    for(double t : sample_times(s))
    {
        EXPECT_GE(t, 500 - 10 / 5.0);
        EXPECT_LE(t, 500 + 10 / 5.0);
    }
}

TEST(SampleTimes, DeterministicAndSorted)
{
    auto s = spec_with(0.01, 400, 1000, 2000, 9);
    auto a = sample_times(s), b = sample_times(s);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_GE(a.front(), 0.0);
    EXPECT_LE(a.back(), 1000.0);
    s.noise_seed = 10;
    EXPECT_NE(sample_times(s), a);
}

TEST(GenerateTopic, PureLoveTarget)
{
    auto s = spec_with(0.01, 400, 1000, 2000);
    s.lh_target = 1.0;
    auto posts = generate_topic(s);
    for(const auto &p : posts)
        EXPECT_EQ(p.angry, 0u);
    EXPECT_EQ(*love_hate(posts), 1.0);
}

TEST(GenerateTopic, NeutralTargetConcentrates)
{
    auto s = spec_with(0.01, 400, 1000, 10000);
    s.lh_target = 0.0;
    s.reaction_rate = 5.0;
    auto posts = generate_topic(s);
    // ~50k Bernoulli(1/2) reactions: sd of LH = 1/sqrt(50k) ~ 0.0045
    EXPECT_NEAR(*love_hate(posts), 0.0, 0.02);
}

TEST(GenerateTopic, PooledLoveHateMatchesTarget)
{
    for(double target : {-0.6, -0.1, 0.3, 0.8})
    {
        auto s = spec_with(0.01, 400, 1000, 10000, 5);
        s.lh_target = target;
        auto posts = generate_topic(s);
        std::uint64_t reactions = 0;
        for(const auto &p : posts)
            reactions += p.love + p.angry;
        // LH = 2 * p_hat - 1; 4 binomial standard errors
        const double p = (1 + target) / 2;
        const double tol = 4 * 2 * std::sqrt(p * (1 - p) / static_cast<double>(reactions));
        EXPECT_NEAR(*love_hate(posts), target, tol);
        EXPECT_GT(sum_love(posts), 0u);
    }
}

TEST(GenerateTopic, PostsFollowSpec)
{
    auto s = spec_with(0.02, 300, 800, 500);
    s.engagement_law = 20;
    auto posts = generate_topic(s);
    ASSERT_EQ(posts.size(), 500u);
    double eng = 0;
    for(std::size_t i = 0; i < posts.size(); ++i)
    {
        EXPECT_EQ(posts[i].topic_id, "topic");
        EXPECT_GE(posts[i].timestamp, s.start);
        EXPECT_LE(posts[i].timestamp, s.start + std::chrono::seconds{800 * 86400});
        if(i > 0)
            EXPECT_LE(posts[i - 1].timestamp, posts[i].timestamp);
        eng += static_cast<double>(posts[i].engagement());
    }
    EXPECT_NEAR(eng / 500.0, 20.0, 1.0);
}

TEST(GenerateCorpus, CountsAndCategories)
{
    std::vector<SynthSpec> specs;
    for(int i = 0; i < 3; ++i)
    {
        auto s = spec_with(0.01, 300, 900, 100 + 50 * i, 3);
        s.topic_id = "t" + std::to_string(i);
        specs.push_back(s);
    }
    CategoryMap cats = {{"t0", {Category::Health}}, {"t2", {Category::Labor, Category::Politics}}};
    auto corpus = generate_corpus(specs, cats);

    std::istringstream in(corpus.posts_jsonl);
    auto parsed = parse_posts(in);
    EXPECT_TRUE(parsed.rejects.empty());
    std::map<std::string, std::size_t> counts;
    for(const auto &p : parsed.records)
        ++counts[p.topic_id];
    EXPECT_EQ(counts, (std::map<std::string, std::size_t>{{"t0", 100}, {"t1", 150}, {"t2", 200}}));
    EXPECT_EQ(corpus.categories_csv, "topic_id,category\nt0,Health\nt2,Labor\nt2,Politics\n");
}

TEST(GenerateCorpus, DeterministicAcrossJobs)
{
    auto design = random_corpus(RandomCorpusConfig{.count = 12, .n_posts = 300}, 17);
    auto a = generate_corpus(design.specs, design.categories, 1);
    auto b = generate_corpus(design.specs, design.categories, 4);
    auto c = generate_corpus(design.specs, design.categories, 3);
    EXPECT_EQ(a.posts_jsonl, b.posts_jsonl);
    EXPECT_EQ(a.posts_jsonl, c.posts_jsonl);
    EXPECT_EQ(a.categories_csv, b.categories_csv);
}

TEST(GenerateCorpus, DuplicateTopicRejected)
{
    std::vector<SynthSpec> specs = {spec_with(0.01, 300, 900, 10), spec_with(0.01, 300, 900, 10)};
    try
    {
        generate_corpus(specs, {});
        FAIL();
    }
    catch(const Error &e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    }
}

TEST(RandomCorpus, DefaultRangesMimicEmpiricalRegime)
{
    auto design = random_corpus({}, 5);
    ASSERT_EQ(design.specs.size(), 50u);
    for(const auto &s : design.specs)
    {
        EXPECT_GE(s.alpha_true, 0.001);
        EXPECT_LE(s.alpha_true, 0.005);
        EXPECT_GE(s.beta_true, 600.0);
        EXPECT_LE(s.beta_true, 1000.0);
        EXPECT_FALSE(design.categories.at(s.topic_id).empty());
    }
}

TEST(CorpusSpec, ParsesTopicsAndRejectsBadInput)
{
    auto j = nlohmann::json::parse(R"({"seed": 3, "topics": [
        {"topic_id": "a", "alpha": 0.01, "beta": 100, "categories": ["Health"]},
        {"topic_id": "b", "alpha": 0.02, "beta": 200, "n_posts": 20}]})");
    auto d = parse_corpus_spec(j);
    ASSERT_EQ(d.specs.size(), 2u);
    EXPECT_EQ(d.specs[1].n_posts, 20u);
    EXPECT_EQ(d.specs[0].noise_seed, 3u);
    EXPECT_EQ(parse_corpus_spec(j, 8).specs[0].noise_seed, 8u);

    EXPECT_THROW(parse_corpus_spec(nlohmann::json::parse(R"({"topics":[{"topic_id":"a","alpha":-1,"beta":1}]})")), Error);
    EXPECT_THROW(parse_corpus_spec(nlohmann::json::parse(R"({"topics":[{"topic_id":"a"}]})")), Error);
    EXPECT_THROW(parse_corpus_spec(nlohmann::json::parse(R"({"seed": 1})")), Error);
}
