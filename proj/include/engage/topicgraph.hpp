/// engage/topicgraph.hpp
///
/// Corpus-to-topics front end: per-article keyword extraction, projection of
/// the term-article bipartite graph onto terms, and Louvain community
/// detection on the weighted co-occurrence graph.

#ifndef ENGAGE_TOPICGRAPH_HPP_
#define ENGAGE_TOPICGRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "engage/error.hpp"

namespace engage
{
    using StopwordSet = std::set<std::string, std::less<>>;

    /// One term per line; blank lines and lines starting with '#' ignored.
    inline StopwordSet read_stopwords(std::istream &in)
    {
        StopwordSet out;
        std::string line;
        while(std::getline(in, line))
        {
            while(!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
                line.pop_back();
            if(line.empty() || line.front() == '#')
                continue;
            std::transform(line.begin(), line.end(), line.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            out.insert(line);
        }
        return out;
    }

    struct TermCount
    {
        std::string term;
        std::uint64_t frequency;

        bool operator==(const TermCount &) const = default;
    };

    struct ArticleTerms
    {
        std::string article_id;
        std::vector<TermCount> top_terms; ///< frequency desc, then term asc
    };

    namespace detail
    {
        inline bool is_token_byte(unsigned char c)
        {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
        }

        inline bool has_digit(std::string_view s)
        {
            return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
        }

        inline std::string ascii_lower(std::string_view s)
        {
            std::string out(s);
            for(auto &c : out)
                if(c >= 'A' && c <= 'Z')
                    c = static_cast<char>(c - 'A' + 'a');
            return out;
        }

        inline ArticleTerms rank_terms(std::string article_id, const std::map<std::string, std::uint64_t> &counts,
                                       std::size_t k)
        {
            if(counts.empty())
                fail(ErrorKind::EmptyArticle, "article '" + article_id + "' has no terms after filtering");
            ArticleTerms out;
            out.article_id = std::move(article_id);
            for(const auto &[term, f] : counts)
                out.top_terms.push_back({term, f});
            std::stable_sort(out.top_terms.begin(), out.top_terms.end(),
                             [](const TermCount &a, const TermCount &b) { return a.frequency > b.frequency; });
            if(out.top_terms.size() > k)
                out.top_terms.resize(k);
            return out;
        }
    }

    /// Splits text into tokens (runs of ASCII letters, digits and non-ASCII
    /// bytes), lowercases them and returns them in order.
    inline std::vector<std::string> tokenize(std::string_view text)
    {
        std::vector<std::string> tokens;
        std::size_t i = 0;
        while(i < text.size())
        {
            while(i < text.size() && !detail::is_token_byte(static_cast<unsigned char>(text[i])))
                ++i;
            std::size_t j = i;
            while(j < text.size() && detail::is_token_byte(static_cast<unsigned char>(text[j])))
                ++j;
            if(j > i)
                tokens.push_back(detail::ascii_lower(text.substr(i, j - i)));
            i = j;
        }
        return tokens;
    }

    /// Top-k terms of pre-tokenized input. Stopwords and tokens containing
    /// digits are dropped; ties at the cutoff are broken lexicographically.
    inline ArticleTerms extract_terms_from_tokens(std::string article_id, std::span<const std::string> tokens,
                                                  const StopwordSet &stopwords, std::size_t k = 10)
    {
        std::map<std::string, std::uint64_t> counts;
        for(const auto &raw : tokens)
        {
            auto tok = detail::ascii_lower(raw);
            if(tok.empty() || detail::has_digit(tok) || stopwords.contains(tok))
                continue;
            ++counts[tok];
        }
        return detail::rank_terms(std::move(article_id), counts, k);
    }

    inline ArticleTerms extract_terms(std::string article_id, std::string_view text, const StopwordSet &stopwords,
                                      std::size_t k = 10)
    {
        auto tokens = tokenize(text);
        return extract_terms_from_tokens(std::move(article_id), tokens, stopwords, k);
    }

    inline ArticleTerms extract_terms(std::string_view text, const StopwordSet &stopwords, std::size_t k = 10)
    {
        return extract_terms(std::string{}, text, stopwords, k);
    }

    // ---------------------------------------------------------------- graph

    struct TermEdge
    {
        std::string a; ///< a < b
        std::string b;
        double weight;

        bool operator==(const TermEdge &) const = default;
    };

    struct TermGraph
    {
        std::vector<std::string> nodes; ///< sorted, unique
        std::vector<TermEdge> edges;    ///< sorted by (a, b), one per unordered pair
        /// community id per node (parallel to `nodes`), ids 0..k-1 numbered
        /// by first appearance in node order
        std::optional<std::vector<std::size_t>> partition;
        std::optional<double> modularity;
        /// modularity of the flattened partition after every Louvain level,
        /// starting with the all-singleton partition
        std::vector<double> modularity_trace;

        std::optional<std::size_t> index_of(std::string_view term) const
        {
            auto it = std::lower_bound(nodes.begin(), nodes.end(), term);
            if(it == nodes.end() || *it != term)
                return std::nullopt;
            return static_cast<std::size_t>(it - nodes.begin());
        }
    };

    /// Projects the term-article bipartite graph onto terms: two terms are
    /// joined with weight = number of articles containing both.
    inline TermGraph project(std::span<const ArticleTerms> articles)
    {
        std::set<std::string> nodes;
        std::map<std::pair<std::string, std::string>, std::uint64_t> weights;
        for(const auto &art : articles)
        {
            std::vector<std::string> terms;
            for(const auto &tc : art.top_terms)
                terms.push_back(tc.term);
            std::sort(terms.begin(), terms.end());
            terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
            nodes.insert(terms.begin(), terms.end());
            for(std::size_t i = 0; i < terms.size(); ++i)
                for(std::size_t j = i + 1; j < terms.size(); ++j)
                    ++weights[{terms[i], terms[j]}];
        }
        TermGraph g;
        g.nodes.assign(nodes.begin(), nodes.end());
        for(const auto &[key, w] : weights)
            g.edges.push_back({key.first, key.second, static_cast<double>(w)});
        return g;
    }

    /// Symmetric weighted graph on nodes 0..n-1. `self` holds the diagonal
    /// entry A_ii, which only appears after aggregation.
    struct WeightedGraph
    {
        std::vector<std::vector<std::pair<std::size_t, double>>> adj;
        std::vector<double> self;

        explicit WeightedGraph(std::size_t n = 0)
            : adj(n), self(n, 0.0)
        { }

        std::size_t size() const
        {
            return adj.size();
        }

        void add_edge(std::size_t i, std::size_t j, double w)
        {
            if(i == j)
            {
                self[i] += w;
                return;
            }
            adj[i].emplace_back(j, w);
            adj[j].emplace_back(i, w);
        }

        double degree(std::size_t i) const
        {
            double k = self[i];
            for(const auto &[j, w] : adj[i])
                k += w;
            return k;
        }

        /// 2m, the sum of all matrix entries.
        double total_weight() const
        {
            double s = 0;
            for(std::size_t i = 0; i < size(); ++i)
                s += degree(i);
            return s;
        }
    };

    inline WeightedGraph to_weighted(const TermGraph &g)
    {
        WeightedGraph wg(g.nodes.size());
        for(const auto &e : g.edges)
            wg.add_edge(*g.index_of(e.a), *g.index_of(e.b), e.weight);
        return wg;
    }

    /// Q = sum_c [ in_c / 2m - gamma (tot_c / 2m)^2 ]; 0 for an edgeless graph.
    inline double modularity(const WeightedGraph &g, std::span<const std::size_t> community, double resolution = 1.0)
    {
        const double two_m = g.total_weight();
        if(two_m <= 0.0)
            return 0.0;
        std::unordered_map<std::size_t, double> in, tot;
        for(std::size_t i = 0; i < g.size(); ++i)
        {
            const auto c = community[i];
            tot[c] += g.degree(i);
            in[c] += g.self[i];
            for(const auto &[j, w] : g.adj[i])
                if(community[j] == c)
                    in[c] += w;
        }
        // sum in a fixed order so the value is reproducible
        std::vector<std::size_t> ids;
        for(const auto &kv : tot)
            ids.push_back(kv.first);
        std::sort(ids.begin(), ids.end());
        double q = 0.0;
        for(auto c : ids)
        {
            const double frac = tot[c] / two_m;
            q += in[c] / two_m - resolution * frac * frac;
        }
        return q;
    }

    struct LouvainResult
    {
        std::vector<std::size_t> community;
        double modularity = 0.0;
        std::vector<double> modularity_trace;
    };

    namespace detail
    {
        inline std::vector<std::size_t> renumber(std::span<const std::size_t> c)
        {
            std::unordered_map<std::size_t, std::size_t> map;
            std::vector<std::size_t> out(c.size());
            for(std::size_t i = 0; i < c.size(); ++i)
            {
                auto [it, inserted] = map.emplace(c[i], map.size());
                out[i] = it->second;
            }
            return out;
        }

        // One round of local moves on g. Returns true if any node moved.
        inline bool local_moves(const WeightedGraph &g, std::vector<std::size_t> &comm, double resolution,
                                double min_gain, std::mt19937_64 &rng)
        {
            const std::size_t n = g.size();
            const double two_m = g.total_weight();
            std::vector<double> k(n), tot(n, 0.0);
            for(std::size_t i = 0; i < n; ++i)
            {
                k[i] = g.degree(i);
                tot[comm[i]] += k[i];
            }

            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);

            std::vector<double> link(n, 0.0);
            std::vector<char> seen(n, 0);
            std::vector<std::size_t> touched;
            bool any_move = false;
            double current_q = modularity(g, comm, resolution);
            while(true)
            {
                std::size_t moves = 0;
                for(auto i : order)
                {
                    const std::size_t own = comm[i];
                    touched.clear();
                    touched.push_back(own);
                    seen[own] = 1;
                    for(const auto &[j, w] : g.adj[i])
                    {
                        const auto c = comm[j];
                        if(!seen[c])
                        {
                            seen[c] = 1;
                            touched.push_back(c);
                        }
                        link[c] += w;
                    }

                    tot[own] -= k[i];
                    std::size_t best = own;
                    double best_gain = link[own] - resolution * tot[own] * k[i] / two_m;
                    for(auto c : touched)
                    {
                        const double gain = link[c] - resolution * tot[c] * k[i] / two_m;
                        if(gain > best_gain)
                        {
                            best_gain = gain;
                            best = c;
                        }
                    }
                    tot[best] += k[i];
                    if(best != own)
                    {
                        comm[i] = best;
                        ++moves;
                    }
                    for(auto c : touched)
                    {
                        link[c] = 0.0;
                        seen[c] = 0;
                    }
                }
                if(moves == 0)
                    break;
                any_move = true;
                const double q = modularity(g, comm, resolution);
                if(q - current_q < min_gain)
                    break;
                current_q = q;
            }
            return any_move;
        }

        inline WeightedGraph aggregate(const WeightedGraph &g, std::span<const std::size_t> comm, std::size_t k)
        {
            WeightedGraph out(k);
            std::map<std::pair<std::size_t, std::size_t>, double> w;
            for(std::size_t i = 0; i < g.size(); ++i)
            {
                out.self[comm[i]] += g.self[i];
                for(const auto &[j, wij] : g.adj[i])
                {
                    const auto a = comm[i], b = comm[j];
                    if(a == b)
                        out.self[a] += wij; // each internal edge is visited from both ends
                    else if(a < b)
                        w[{a, b}] += wij;
                }
            }
            for(const auto &[key, wij] : w)
                out.add_edge(key.first, key.second, wij);
            return out;
        }
    }

    /// Two-phase Louvain: local moves maximizing modularity gain, then
    /// aggregation of communities into nodes, repeated until a level improves
    /// Q by less than min_gain. Node visit order is shuffled with `seed`.
    inline LouvainResult louvain(const WeightedGraph &graph, std::uint64_t seed, double resolution = 1.0,
                                 double min_gain = 1e-7)
    {
        const std::size_t n = graph.size();
        if(n == 0)
            fail(ErrorKind::InvalidInput, "louvain: empty graph");

        LouvainResult res;
        res.community.resize(n);
        std::iota(res.community.begin(), res.community.end(), 0);
        res.modularity = modularity(graph, res.community, resolution);
        res.modularity_trace.push_back(res.modularity);
        if(graph.total_weight() <= 0.0)
            return res;

        std::mt19937_64 rng(seed);
        WeightedGraph level = graph;
        while(true)
        {
            std::vector<std::size_t> comm(level.size());
            std::iota(comm.begin(), comm.end(), 0);
            if(!detail::local_moves(level, comm, resolution, min_gain, rng))
                break;
            comm = detail::renumber(comm);
            const std::size_t k = *std::max_element(comm.begin(), comm.end()) + 1;

            std::vector<std::size_t> flat(n);
            for(std::size_t i = 0; i < n; ++i)
                flat[i] = comm[res.community[i]];
            const double q = modularity(graph, flat, resolution);
            if(q - res.modularity < min_gain)
                break;
            res.community = std::move(flat);
            res.modularity = q;
            res.modularity_trace.push_back(q);
            if(k == level.size())
                break;
            level = detail::aggregate(level, comm, k);
        }
        res.community = detail::renumber(res.community);
        res.modularity = modularity(graph, res.community, resolution);
        return res;
    }

    inline TermGraph louvain(TermGraph graph, std::uint64_t seed, double resolution = 1.0, double min_gain = 1e-7)
    {
        if(graph.nodes.empty())
            fail(ErrorKind::InvalidInput, "louvain: empty graph");
        auto res = louvain(to_weighted(graph), seed, resolution, min_gain);
        graph.partition = std::move(res.community);
        graph.modularity = res.modularity;
        graph.modularity_trace = std::move(res.modularity_trace);
        return graph;
    }

    struct RankedTerm
    {
        std::string term;
        double weighted_degree; ///< within its community
    };

    struct Cluster
    {
        std::size_t community;
        std::vector<RankedTerm> terms;
    };

    /// Per community, the top_n terms by intra-community weighted degree
    /// (ties broken lexicographically). Communities in id order.
    inline std::vector<Cluster> cluster_report(const TermGraph &g, std::size_t top_n = 10)
    {
        if(!g.partition)
            fail(ErrorKind::InvalidInput, "cluster_report: graph has no partition");
        const auto &part = *g.partition;
        std::vector<double> intra(g.nodes.size(), 0.0);
        for(const auto &e : g.edges)
        {
            const auto a = *g.index_of(e.a), b = *g.index_of(e.b);
            if(part[a] == part[b])
            {
                intra[a] += e.weight;
                intra[b] += e.weight;
            }
        }
        const std::size_t k = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
        std::vector<Cluster> out(k);
        for(std::size_t c = 0; c < k; ++c)
            out[c].community = c;
        for(std::size_t i = 0; i < g.nodes.size(); ++i)
            out[part[i]].terms.push_back({g.nodes[i], intra[i]});
        for(auto &cl : out)
        {
            std::stable_sort(cl.terms.begin(), cl.terms.end(), [](const RankedTerm &a, const RankedTerm &b) {
                if(a.weighted_degree != b.weighted_degree)
                    return a.weighted_degree > b.weighted_degree;
                return a.term < b.term;
            });
            if(cl.terms.size() > top_n)
                cl.terms.resize(top_n);
        }
        return out;
    }
}

#endif
