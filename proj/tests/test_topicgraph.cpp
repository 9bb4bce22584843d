#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "engage/topicgraph.hpp"
#include "oracles.hpp"

using namespace engage;

namespace
{
    TermGraph graph_from_edges(std::vector<std::string> nodes, std::vector<TermEdge> edges)
    {
        TermGraph g;
        std::sort(nodes.begin(), nodes.end());
        g.nodes = std::move(nodes);
        for(auto &e : edges)
            if(e.b < e.a)
                std::swap(e.a, e.b);
        std::sort(edges.begin(), edges.end(), [](const auto &x, const auto &y) {
            return std::tie(x.a, x.b) < std::tie(y.a, y.b);
        });
        g.edges = std::move(edges);
        return g;
    }

    std::vector<std::vector<double>> dense(const WeightedGraph &g)
    {
        std::vector<std::vector<double>> A(g.size(), std::vector<double>(g.size(), 0.0));
        for(std::size_t i = 0; i < g.size(); ++i)
        {
            A[i][i] = g.self[i];
            for(const auto &[j, w] : g.adj[i])
                A[i][j] += w;
        }
        return A;
    }

    std::vector<int> as_int(const std::vector<std::size_t> &c)
    {
        return std::vector<int>(c.begin(), c.end());
    }

    // cliques of size k named <prefix><i>_<j>; ring bridges between consecutive cliques
    TermGraph clique_ring(std::size_t cliques, std::size_t k, bool ring)
    {
        std::vector<std::string> nodes;
        std::vector<TermEdge> edges;
        auto name = [](std::size_t c, std::size_t i) { return "c" + std::to_string(c) + "_" + std::to_string(i); };
        for(std::size_t c = 0; c < cliques; ++c)
        {
            for(std::size_t i = 0; i < k; ++i)
            {
                nodes.push_back(name(c, i));
                for(std::size_t j = i + 1; j < k; ++j)
                    edges.push_back({name(c, i), name(c, j), 1.0});
            }
        }
        const std::size_t bridges = ring ? cliques : cliques - 1;
        for(std::size_t c = 0; c < bridges; ++c)
            edges.push_back({name(c, 0), name((c + 1) % cliques, 1), 1.0});
        return graph_from_edges(nodes, edges);
    }

    bool same_partition(const std::vector<std::size_t> &a, const std::vector<int> &b)
    {
        for(std::size_t i = 0; i < a.size(); ++i)
            for(std::size_t j = 0; j < a.size(); ++j)
                if((a[i] == a[j]) != (b[i] == b[j]))
                    return false;
        return true;
    }
}

TEST(ExtractTerms, HandCount)
{
    StopwordSet sw = {"the", "on"};
    auto a = extract_terms("The cat sat on the mat cat cat mat", sw);
    EXPECT_EQ(a.top_terms, (std::vector<TermCount>{{"cat", 3}, {"mat", 2}, {"sat", 1}}));
}

TEST(ExtractTerms, OnlyStopwordsAndNumbers)
{
    StopwordSet sw = {"the", "on"};
    try
    {
        extract_terms("The 2019 on 42 x1 ... THE", sw);
        FAIL();
    }
    catch(const Error &e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyArticle);
    }
    EXPECT_THROW(extract_terms("   ", sw), Error);
}

TEST(ExtractTerms, KeepsTenMostFrequent)
{
    std::string text;
    const std::vector<std::string> words = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot",
                                            "golf", "hotel", "india", "juliet", "kilo", "lima"};
    for(std::size_t i = 0; i < words.size(); ++i)
        for(std::size_t r = 0; r < 12 - i; ++r)
            text += words[i] + " ";
    auto a = extract_terms("doc", text, {});
    ASSERT_EQ(a.top_terms.size(), 10u);
    for(std::size_t i = 0; i < 10; ++i)
    {
        EXPECT_EQ(a.top_terms[i].term, words[i]);
        EXPECT_EQ(a.top_terms[i].frequency, 12 - i);
    }
}

TEST(ExtractTerms, CutoffTiesAreLexicographic)
{
    auto a = extract_terms("zeta zeta yak xray wolf", {}, 2);
    EXPECT_EQ(a.top_terms, (std::vector<TermCount>{{"zeta", 2}, {"wolf", 1}}));
}

TEST(ExtractTerms, LowercasesAndSplitsOnPunctuation)
{
    auto a = extract_terms("Refugees, REFUGEES! refugees' border-crossing covid19", {});
    EXPECT_EQ(a.top_terms.front(), (TermCount{"refugees", 3}));
    EXPECT_EQ(a.top_terms.size(), 3u);
}

TEST(Project, TwoArticles)
{
    std::vector<ArticleTerms> arts = {{"A1", {{"a", 1}, {"b", 1}}}, {"A2", {{"b", 1}, {"c", 1}}}};
    auto g = project(arts);
    EXPECT_EQ(g.nodes, (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(g.edges, (std::vector<TermEdge>{{"a", "b", 1}, {"b", "c", 1}}));
}

TEST(Project, CoOccurrenceCount)
{
    std::vector<ArticleTerms> arts = {{"A1", {{"a", 2}, {"b", 1}}}, {"A2", {{"b", 5}, {"a", 1}}}};
    auto g = project(arts);
    EXPECT_EQ(g.edges, (std::vector<TermEdge>{{"a", "b", 2}}));
}

TEST(Project, MatchesBruteForceAndIsOrderFree)
{
    std::mt19937_64 rng(20);
    std::uniform_int_distribution<int> pick(0, 14), len(1, 6);
    std::vector<ArticleTerms> arts;
    for(int i = 0; i < 20; ++i)
    {
        std::set<std::string> terms;
        const int n = len(rng);
        while(static_cast<int>(terms.size()) < n)
            terms.insert("w" + std::to_string(pick(rng)));
        ArticleTerms a{"A" + std::to_string(i), {}};
        for(const auto &t : terms)
            a.top_terms.push_back({t, 1});
        arts.push_back(a);
    }
    auto g = project(arts);
    for(const auto &e : g.edges)
    {
        EXPECT_NE(e.a, e.b);
        EXPECT_LT(e.a, e.b);
    }
    std::size_t pairs_with_weight = 0;
    for(std::size_t i = 0; i < g.nodes.size(); ++i)
        for(std::size_t j = i + 1; j < g.nodes.size(); ++j)
        {
            std::uint64_t shared = 0;
            for(const auto &a : arts)
            {
                bool has_i = false, has_j = false;
                for(const auto &tc : a.top_terms)
                {
                    has_i |= tc.term == g.nodes[i];
                    has_j |= tc.term == g.nodes[j];
                }
                shared += has_i && has_j;
            }
            auto it = std::find_if(g.edges.begin(), g.edges.end(),
                                   [&](const TermEdge &e) { return e.a == g.nodes[i] && e.b == g.nodes[j]; });
            if(shared == 0)
                EXPECT_EQ(it, g.edges.end());
            else
            {
                ++pairs_with_weight;
                ASSERT_NE(it, g.edges.end());
                EXPECT_EQ(it->weight, static_cast<double>(shared));
            }
        }
    EXPECT_EQ(pairs_with_weight, g.edges.size());

    auto shuffled = arts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto g2 = project(shuffled);
    EXPECT_EQ(g2.nodes, g.nodes);
    EXPECT_EQ(g2.edges, g.edges);
}

TEST(Louvain, TwoTriangles)
{
    auto g = clique_ring(2, 3, false);
    std::vector<int> best;
    const double q_best = oracle::max_modularity(dense(to_weighted(g)), &best);
    for(std::uint64_t seed = 0; seed < 10; ++seed)
    {
        auto r = louvain(g, seed);
        ASSERT_TRUE(r.partition);
        EXPECT_EQ(*std::max_element(r.partition->begin(), r.partition->end()), 1u);
        EXPECT_TRUE(same_partition(*r.partition, best));
        EXPECT_NEAR(*r.modularity, q_best, 1e-12);
        for(std::size_t i = 0; i < g.nodes.size(); ++i)
            EXPECT_EQ((*r.partition)[i], (*r.partition)[g.nodes[i][1] == '0' ? 0 : 3]);
    }
}

TEST(Louvain, EdgelessGraph)
{
    auto g = graph_from_edges({"a", "b", "c", "d"}, {});
    auto r = louvain(g, 1);
    EXPECT_EQ(*r.partition, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(*r.modularity, 0.0);
}

TEST(Louvain, RingOfFourCliques)
{
    auto g = clique_ring(4, 5, true);
    // quotient graph: each K5 collapses to a node with A_cc = 2 * 10, bridges weight 1
    std::vector<std::vector<double>> quotient(4, std::vector<double>(4, 0.0));
    for(int c = 0; c < 4; ++c)
    {
        quotient[c][c] = 20;
        quotient[c][(c + 1) % 4] = quotient[(c + 1) % 4][c] = 1;
    }
    std::vector<int> best;
    const double q_best = oracle::max_modularity(quotient, &best);
    EXPECT_EQ(best, (std::vector<int>{0, 1, 2, 3}));

    for(std::uint64_t seed = 0; seed < 10; ++seed)
    {
        auto r = louvain(g, seed);
        const auto &p = *r.partition;
        EXPECT_EQ(*std::max_element(p.begin(), p.end()), 3u);
        for(std::size_t i = 0; i < g.nodes.size(); ++i)
            for(std::size_t j = 0; j < g.nodes.size(); ++j)
                EXPECT_EQ(p[i] == p[j], g.nodes[i].substr(0, 2) == g.nodes[j].substr(0, 2));
        EXPECT_NEAR(*r.modularity, q_best, 1e-12);
    }
}

TEST(Louvain, TraceMonotoneAndQRecomputes)
{
    std::mt19937_64 rng(31);
    for(int trial = 0; trial < 40; ++trial)
    {
        std::uniform_int_distribution<std::size_t> nn(5, 40);
        const std::size_t n = nn(rng);
        std::bernoulli_distribution edge(0.15);
        std::uniform_int_distribution<int> w(1, 4);
        WeightedGraph g(n);
        for(std::size_t i = 0; i < n; ++i)
            for(std::size_t j = i + 1; j < n; ++j)
                if(edge(rng))
                    g.add_edge(i, j, w(rng));
        auto r = louvain(g, trial);
        for(std::size_t k = 1; k < r.modularity_trace.size(); ++k)
            EXPECT_GE(r.modularity_trace[k], r.modularity_trace[k - 1]);
        EXPECT_NEAR(r.modularity, oracle::dense_modularity(dense(g), as_int(r.community)), 1e-12);
        EXPECT_NEAR(r.modularity, r.modularity_trace.back(), 1e-12);
    }
}

TEST(Louvain, NearBruteForceOptimumOnSmallGraphs)
{
    std::mt19937_64 rng(32);
    for(int trial = 0; trial < 60; ++trial)
    {
        std::uniform_int_distribution<std::size_t> nn(2, 8);
        const std::size_t n = nn(rng);
        std::bernoulli_distribution edge(0.45);
        std::uniform_int_distribution<int> w(1, 3);
        WeightedGraph g(n);
        for(std::size_t i = 0; i < n; ++i)
            for(std::size_t j = i + 1; j < n; ++j)
                if(edge(rng))
                    g.add_edge(i, j, w(rng));
        const double best = oracle::max_modularity(dense(g));
        auto r = louvain(g, trial);
        EXPECT_GE(r.modularity, best - 0.05) << "trial " << trial;
        EXPECT_LE(r.modularity, best + 1e-12);
    }
}

TEST(ClusterReport, TwoTriangles)
{
    auto g = louvain(clique_ring(2, 3, false), 7);
    auto report = cluster_report(g);
    ASSERT_EQ(report.size(), 2u);
    for(const auto &c : report)
    {
        ASSERT_EQ(c.terms.size(), 3u);
        const auto prefix = c.terms.front().term.substr(0, 2);
        for(const auto &t : c.terms)
            EXPECT_EQ(t.term.substr(0, 2), prefix);
        EXPECT_EQ(c.terms.front().weighted_degree, 2.0);
        // degree ties fall back to lexicographic order
        EXPECT_LT(c.terms[0].term, c.terms[1].term);
    }
}

TEST(ClusterReport, SingletonsAndDeterminism)
{
    auto g = louvain(graph_from_edges({"x", "y", "z"}, {}), 3);
    auto report = cluster_report(g);
    ASSERT_EQ(report.size(), 3u);
    for(const auto &c : report)
        EXPECT_EQ(c.terms.size(), 1u);

    auto ring = clique_ring(4, 5, true);
    auto a = cluster_report(louvain(ring, 99), 3);
    auto b = cluster_report(louvain(ring, 99), 3);
    ASSERT_EQ(a.size(), b.size());
    for(std::size_t i = 0; i < a.size(); ++i)
    {
        ASSERT_EQ(a[i].terms.size(), 3u);
        for(std::size_t j = 0; j < a[i].terms.size(); ++j)
            EXPECT_EQ(a[i].terms[j].term, b[i].terms[j].term);
    }
    EXPECT_THROW(cluster_report(ring), Error);
}
