#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "engage/curvefit.hpp"
#include "engage/model.hpp"
#include "engage/synth.hpp"

using namespace engage;

namespace
{
    std::string post_line(const std::string &id, const std::string &topic, const std::string &ts, long likes,
                          long shares = 0, long comments = 0, long love = 0, long angry = 0)
    {
        return "{\"post_id\":\"" + id + "\",\"topic_id\":\"" + topic + "\",\"timestamp\":\"" + ts +
               "\",\"likes\":" + std::to_string(likes) + ",\"shares\":" + std::to_string(shares) +
               ",\"comments\":" + std::to_string(comments) + ",\"love\":" + std::to_string(love) +
               ",\"angry\":" + std::to_string(angry) + "}";
    }

    PostRecord make_post(const std::string &topic, double day, std::uint64_t engagement)
    {
        PostRecord p;
        p.post_id = topic + std::to_string(day);
        p.topic_id = topic;
        p.timestamp = Instant{std::chrono::sys_days{std::chrono::year{2020} / 1 / 1}} +
                      std::chrono::seconds{static_cast<long>(day * 86400)};
        p.likes = engagement;
        return p;
    }
}

TEST(Rfc3339, ParsesOffsetsAndFractions)
{
    auto a = parse_rfc3339("2020-03-01T12:00:00Z");
    auto b = parse_rfc3339("2020-03-01T14:30:00.123+02:30");
    ASSERT_TRUE(a && b);
    EXPECT_EQ(*a, *b);
    EXPECT_EQ(format_rfc3339(*a), "2020-03-01T12:00:00Z");
    EXPECT_FALSE(parse_rfc3339("2020-02-30T00:00:00Z"));
    EXPECT_FALSE(parse_rfc3339("2020-03-01 12:00"));
    EXPECT_FALSE(parse_rfc3339("2020-03-01T12:00:00"));
}

TEST(ParsePosts, ValidFile)
{
    std::istringstream in(post_line("p1", "t", "2020-01-01T00:00:00Z", 1) + "\n" +
                          post_line("p2", "t", "2020-01-02T00:00:00Z", 2) + "\n" +
                          post_line("p3", "u", "2020-01-03T00:00:00+01:00", 3, 1, 1, 2, 1) + "\n");
    auto r = parse_posts(in);
    EXPECT_EQ(r.records.size(), 3u);
    EXPECT_TRUE(r.rejects.empty());
    EXPECT_EQ(r.records[2].engagement(), 5u);
    EXPECT_EQ(r.records[2].love, 2u);
}

TEST(ParsePosts, NegativeCountRejectedWithLineNumber)
{
    std::istringstream in(post_line("p1", "t", "2020-01-01T00:00:00Z", 1) + "\n" +
                          post_line("p2", "t", "2020-01-02T00:00:00Z", -1) + "\n");
    auto r = parse_posts(in);
    ASSERT_EQ(r.rejects.size(), 1u);
    EXPECT_EQ(r.rejects[0].line, 2u);
    EXPECT_EQ(r.records.size(), 1u);
}

TEST(ParsePosts, MixedValidAndInvalid)
{
    std::string text;
    text += post_line("p1", "t", "2020-01-01T00:00:00Z", 1) + "\n";
    text += "not json\n";                                                      // line 2
    text += post_line("p2", "t", "2020-01-02T00:00:00Z", 1) + "\n";
    text += post_line("p3", "t", "2020-01-03T00:00:00Z", 1) + "\n";
    text += "\n";                                                              // blank, skipped
    text += R"({"post_id":"p4","topic_id":"t","timestamp":"yesterday","likes":1,"shares":0,"comments":0,"love":0,"angry":0})"
            "\n";                                                              // line 6
    text += post_line("p5", "t", "2020-01-05T00:00:00Z", 1) + "\n";
    text += post_line("p6", "t", "2020-01-06T00:00:00Z", 1) + "\n";
    std::istringstream in(text);
    auto r = parse_posts(in);
    EXPECT_EQ(r.records.size(), 5u);
    ASSERT_EQ(r.rejects.size(), 2u);
    EXPECT_EQ(r.rejects[0].line, 2u);
    EXPECT_EQ(r.rejects[1].line, 6u);
}

TEST(ParsePosts, SchemaIsExact)
{
    std::istringstream in(
        R"({"post_id":"p","topic_id":"t","timestamp":"2020-01-01T00:00:00Z","likes":1,"shares":0,"comments":0,"love":0})"
        "\n"
        R"({"post_id":"p","topic_id":"t","timestamp":"2020-01-01T00:00:00Z","likes":1,"shares":0,"comments":0,"love":0,"angry":0,"haha":3})"
        "\n"
        R"({"post_id":"p","topic_id":"t","timestamp":"2020-01-01T00:00:00Z","likes":1.5,"shares":0,"comments":0,"love":0,"angry":0})"
        "\n");
    auto r = parse_posts(in);
    EXPECT_TRUE(r.records.empty());
    EXPECT_EQ(r.rejects.size(), 3u);
}

TEST(ParsePosts, EmptyStream)
{
    std::istringstream in("");
    auto r = parse_posts(in);
    EXPECT_TRUE(r.records.empty());
    EXPECT_TRUE(r.rejects.empty());
}

TEST(ParseCategories, GroupsPairsPerTopic)
{
    std::istringstream in("topic_id,category\nt1,Health\nt1,Politics\nt2,Economy\nt3,Sports\n");
    auto r = parse_categories(in);
    ASSERT_EQ(r.assignments.size(), 2u);
    EXPECT_EQ(r.assignments[0].topic_id, "t1");
    EXPECT_EQ(r.assignments[0].categories, (std::set<Category>{Category::Health, Category::Politics}));
    ASSERT_EQ(r.rejects.size(), 1u);
    EXPECT_EQ(r.rejects[0].line, 5u);

    std::istringstream bad("topic,cat\n");
    EXPECT_THROW(parse_categories(bad), Error);
}

TEST(BuildSeries, TwoPointArithmetic)
{
    std::vector<PostRecord> posts = {make_post("t", 0, 10), make_post("t", 10, 30)};
    auto s = build_series(posts, "t", 1.0);
    ASSERT_EQ(s.bins.size(), 11u);
    for(int k = 0; k < 10; ++k)
    {
        EXPECT_EQ(s.bins[k].t, k);
        EXPECT_EQ(s.bins[k].cumulative_fraction, 0.25);
    }
    EXPECT_EQ(s.bins[10].t, 10.0);
    EXPECT_EQ(s.bins[10].cumulative_fraction, 1.0);
    EXPECT_EQ(s.horizon_T, 10.0);
    EXPECT_EQ(s.total_engagement, 40u);
    EXPECT_EQ(s.n_posts, 2u);
}

TEST(BuildSeries, PreconditionErrors)
{
    std::vector<PostRecord> one = {make_post("t", 0, 10)};
    try
    {
        build_series(one, "t");
        FAIL();
    }
    catch(const Error &e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientData);
    }

    std::vector<PostRecord> zero = {make_post("t", 0, 0), make_post("t", 3, 0)};
    try
    {
        build_series(zero, "t");
        FAIL();
    }
    catch(const Error &e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroEngagement);
    }
}

TEST(BuildSeries, InvariantsPermutationAndIsolation)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> day(0, 300);
    std::uniform_int_distribution<int> eng(0, 40);
    for(int trial = 0; trial < 50; ++trial)
    {
        std::vector<PostRecord> a, b;
        for(int i = 0; i < 60; ++i)
            a.push_back(make_post("a", day(rng), static_cast<std::uint64_t>(eng(rng))));
        for(int i = 0; i < 40; ++i)
            b.push_back(make_post("b", day(rng), static_cast<std::uint64_t>(eng(rng))));
        a[0].likes += 1;

        const auto sa = build_series(a, "a");
        ASSERT_EQ(sa.bins.front().t, 0.0);
        ASSERT_EQ(sa.bins.back().cumulative_fraction, 1.0);
        for(std::size_t i = 0; i < sa.bins.size(); ++i)
        {
            ASSERT_GE(sa.bins[i].cumulative_fraction, 0.0);
            ASSERT_LE(sa.bins[i].cumulative_fraction, 1.0);
            if(i > 0)
            {
                ASSERT_GT(sa.bins[i].t, sa.bins[i - 1].t);
                ASSERT_GE(sa.bins[i].cumulative_fraction, sa.bins[i - 1].cumulative_fraction);
            }
        }

        auto shuffled = a;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(build_series(shuffled, "a"), sa);

        std::vector<PostRecord> merged = a;
        merged.insert(merged.end(), b.begin(), b.end());
        std::shuffle(merged.begin(), merged.end(), rng);
        EXPECT_EQ(build_series(merged, "a"), sa);
        if(std::any_of(b.begin(), b.end(), [](const PostRecord &p) { return p.engagement() > 0; }))
            EXPECT_EQ(build_series(merged, "b"), build_series(b, "b"));
    }
}

TEST(BuildSeries, WiderBins)
{
    std::vector<PostRecord> posts = {make_post("t", 0, 1), make_post("t", 6.5, 1), make_post("t", 14, 2)};
    auto s = build_series(posts, "t", 7.0);
    ASSERT_EQ(s.bins.size(), 3u);
    EXPECT_EQ(s.bins[1].t, 7.0);
    EXPECT_EQ(s.bins[0].cumulative_fraction, 0.5);
    EXPECT_EQ(s.horizon_T, 14.0);
}

TEST(BuildSeries, SyntheticPostsTrackGeneratingCurve)
{
    SynthSpec spec;
    spec.topic_id = "synthetic";
    spec.alpha_true = 0.02;
    spec.beta_true = 500;
    spec.horizon_T = 1000;
    spec.n_posts = 1000;
    spec.noise_seed = 3;
    auto posts = generate_topic(spec);
    auto s = build_series(posts, "synthetic", 1.0, spec.start);
    double worst = 0;
    for(const auto &b : s.bins)
        worst = std::max(worst, std::abs(b.cumulative_fraction - sigmoid(b.t, spec.alpha_true, spec.beta_true)));
    EXPECT_LT(worst, 0.05);
}
