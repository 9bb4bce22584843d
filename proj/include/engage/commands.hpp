/// engage/commands.hpp
///
/// The three pipeline commands behind the `engage` CLI. Each returns an exit
/// code (0 success, 1 partial, 2 input error) and writes its outputs under
/// the configured directory. Outputs are byte-identical for identical
/// inputs, seed and options, whatever the `jobs` value.

#ifndef ENGAGE_COMMANDS_HPP_
#define ENGAGE_COMMANDS_HPP_

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "engage/curvefit.hpp"
#include "engage/error.hpp"
#include "engage/format.hpp"
#include "engage/metrics.hpp"
#include "engage/model.hpp"
#include "engage/parallel.hpp"
#include "engage/stats.hpp"
#include "engage/svg.hpp"
#include "engage/synth.hpp"
#include "engage/topicgraph.hpp"

namespace engage
{
    namespace fs = std::filesystem;

    inline constexpr int exit_ok = 0;
    inline constexpr int exit_partial = 1;
    inline constexpr int exit_input_error = 2;

    struct CommandResult
    {
        int exit_code = exit_ok;
        std::string message;
    };

    namespace detail
    {
        inline std::optional<std::string> read_file(const fs::path &p)
        {
            std::ifstream in(p, std::ios::binary);
            if(!in)
                return std::nullopt;
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        inline void write_file(const fs::path &p, std::string_view content)
        {
            if(p.has_parent_path())
                fs::create_directories(p.parent_path());
            std::ofstream out(p, std::ios::binary | std::ios::trunc);
            if(!out)
                fail(ErrorKind::InvalidInput, "cannot write " + p.string());
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
        }

        inline std::string safe_name(std::string_view s)
        {
            std::string out;
            for(char c : s)
            {
                const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                                c == '-' || c == '_' || c == '.';
                out += ok ? c : '_';
            }
            return out;
        }

        inline nlohmann::ordered_json number_or_null(std::optional<double> v)
        {
            if(!v || !std::isfinite(*v))
                return nullptr;
            return *v;
        }

        struct MeanSd
        {
            std::optional<double> mean, sd;
        };

        inline MeanSd mean_sd(std::span<const double> v)
        {
            MeanSd r;
            if(v.empty())
                return r;
            double s = 0;
            for(double x : v)
                s += x;
            const double m = s / static_cast<double>(v.size());
            r.mean = m;
            if(v.size() > 1)
            {
                double ss = 0;
                for(double x : v)
                    ss += (x - m) * (x - m);
                r.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
            }
            return r;
        }

        inline nlohmann::ordered_json correlation_json(std::span<const double> x, std::span<const double> y)
        {
            nlohmann::ordered_json j;
            try
            {
                auto c = spearman(x, y);
                j["rho"] = c.rho;
                j["p_value"] = c.p_value;
                j["n"] = c.n;
            }
            catch(const Error &e)
            {
                j["rho"] = nullptr;
                j["p_value"] = nullptr;
                j["n"] = x.size();
                j["error"] = std::string(to_string(e.kind()));
            }
            return j;
        }
    }

    // ------------------------------------------------------------------ analyze

    struct AnalyzeConfig
    {
        fs::path posts_path;
        std::optional<fs::path> categories_path;
        fs::path out_dir;
        double bin_width_days = 1.0;
        FitOptions fit_options;
        LoveHateMode lh_mode = LoveHateMode::Pooled;
        double alpha_level = 0.05;
        unsigned jobs = 1;
        bool plots = false;
    };

    struct TopicOutcome
    {
        std::string topic_id;
        std::size_t n_posts = 0;
        std::optional<TopicSeries> series;
        std::optional<FitResult> fit;
        std::optional<TopicMetrics> metrics;
        std::optional<std::string> skip_reason;
        std::string skip_detail;
    };

    /// Series, fit and metrics for every topic of a post set. Topics that
    /// violate a precondition carry a skip reason instead of results.
    inline std::vector<TopicOutcome> analyze_topics(std::span<const PostRecord> posts, double bin_width_days,
                                                    const FitOptions &options, LoveHateMode lh_mode, unsigned jobs = 1)
    {
        std::map<std::string, std::vector<PostRecord>> by_topic;
        for(const auto &p : posts)
            by_topic[p.topic_id].push_back(p);

        std::vector<const std::pair<const std::string, std::vector<PostRecord>> *> topics;
        for(const auto &kv : by_topic)
            topics.push_back(&kv);

        std::vector<TopicOutcome> out(topics.size());
        parallel_for(topics.size(), jobs, [&](std::size_t i) {
            const auto &[topic, tposts] = *topics[i];
            TopicOutcome &o = out[i];
            o.topic_id = topic;
            o.n_posts = tposts.size();
            try
            {
                o.series = build_series(tposts, topic, bin_width_days);
                o.fit = fit(*o.series, options);
                o.metrics = topic_metrics(*o.series, *o.fit, tposts, lh_mode);
            }
            catch(const Error &e)
            {
                o.series.reset();
                o.fit.reset();
                o.metrics.reset();
                o.skip_reason = std::string(to_string(e.kind()));
                o.skip_detail = e.what();
            }
        });
        return out;
    }

    inline std::string fits_csv(std::span<const TopicOutcome> outcomes)
    {
        std::string s = "topic_id,alpha,beta,se_alpha,se_beta,rss,n_points,converged,iterations\n";
        for(const auto &o : outcomes)
        {
            if(!o.fit)
                continue;
            const auto &f = *o.fit;
            s += csv_field(o.topic_id) + "," + format_double(f.alpha_hat) + "," + format_double(f.beta_hat) + "," +
                 format_double(f.se_alpha) + "," + format_double(f.se_beta) + "," + format_double(f.rss) + "," +
                 std::to_string(f.n_points) + "," + (f.converged ? "true" : "false") + "," +
                 std::to_string(f.iterations) + "\n";
        }
        return s;
    }

    inline std::string metrics_csv(std::span<const TopicOutcome> outcomes, LoveHateMode mode)
    {
        std::string s = "topic_id,speed_index,lh_score,lh_mode,total_love,total_angry,n_posts\n";
        for(const auto &o : outcomes)
        {
            if(!o.metrics)
                continue;
            const auto &m = *o.metrics;
            s += csv_field(o.topic_id) + "," + format_double(m.speed_index) + "," +
                 (m.lh_score ? format_double(*m.lh_score) : std::string()) + "," + std::string(to_string(mode)) + "," +
                 std::to_string(m.total_love) + "," + std::to_string(m.total_angry) + "," + std::to_string(m.n_posts) +
                 "\n";
        }
        return s;
    }

    /// p-value matrix with category labels as header row and first column;
    /// the diagonal is left empty.
    inline std::string matrix_csv(const PairwiseTestMatrix &m)
    {
        std::string s;
        for(auto c : m.categories)
            s += "," + std::string(to_string(c));
        s += "\n";
        for(std::size_t i = 0; i < m.categories.size(); ++i)
        {
            s += std::string(to_string(m.categories[i]));
            for(std::size_t j = 0; j < m.categories.size(); ++j)
            {
                s += ",";
                if(m.p_values[i][j])
                    s += format_double(*m.p_values[i][j]);
            }
            s += "\n";
        }
        return s;
    }

    /// Share of pairwise tests below / above the corrected threshold per
    /// metric, as percentages.
    inline std::string significance_summary_csv(std::span<const PairwiseTestMatrix> matrices)
    {
        std::string head = "", below = "below_threshold", above = "above_threshold";
        for(const auto &m : matrices)
        {
            head += "," + m.metric_name;
            below += "," + format_double(100.0 * m.frac_significant);
            above += "," + format_double(100.0 * (1.0 - m.frac_significant));
        }
        return head + "\n" + below + "\n" + above + "\n";
    }

    inline CommandResult cmd_analyze(const AnalyzeConfig &cfg)
    {
        if(!(cfg.alpha_level > 0.0 && cfg.alpha_level < 1.0))
            return {exit_input_error, "alpha level must lie in (0, 1)"};
        if(!(cfg.bin_width_days > 0.0))
            return {exit_input_error, "bin width must be positive"};
        auto posts_text = detail::read_file(cfg.posts_path);
        if(!posts_text)
            return {exit_input_error, "cannot read posts file " + cfg.posts_path.string()};
        std::optional<std::string> cats_text;
        if(cfg.categories_path)
        {
            cats_text = detail::read_file(*cfg.categories_path);
            if(!cats_text)
                return {exit_input_error, "cannot read categories file " + cfg.categories_path->string()};
        }

        std::istringstream pin(*posts_text);
        auto parsed = parse_posts(pin);
        if(parsed.records.empty())
            return {exit_input_error, "no valid posts in " + cfg.posts_path.string()};

        CategoryParseResult cats;
        if(cats_text)
        {
            try
            {
                std::istringstream cin(*cats_text);
                cats = parse_categories(cin);
            }
            catch(const Error &e)
            {
                return {exit_input_error, e.what()};
            }
        }

        const auto outcomes = analyze_topics(parsed.records, cfg.bin_width_days, cfg.fit_options, cfg.lh_mode, cfg.jobs);

        detail::write_file(cfg.out_dir / "fits.csv", fits_csv(outcomes));
        detail::write_file(cfg.out_dir / "metrics.csv", metrics_csv(outcomes, cfg.lh_mode));

        // per-topic metric values
        std::map<Metric, std::map<std::string, double>> values;
        std::vector<double> si_l, lh_l, alpha_l, se_a, se_b, npost;
        std::map<std::string, const TopicOutcome *> by_id;
        for(const auto &o : outcomes)
        {
            if(!o.fit)
                continue;
            by_id[o.topic_id] = &o;
            values[Metric::Alpha][o.topic_id] = o.fit->alpha_hat;
            values[Metric::Beta][o.topic_id] = o.fit->beta_hat;
            values[Metric::SpeedIndex][o.topic_id] = o.metrics->speed_index;
            se_a.push_back(o.fit->se_alpha);
            se_b.push_back(o.fit->se_beta);
            npost.push_back(static_cast<double>(o.n_posts));
            if(o.metrics->lh_score)
            {
                values[Metric::LoveHate][o.topic_id] = *o.metrics->lh_score;
                si_l.push_back(o.metrics->speed_index);
                lh_l.push_back(*o.metrics->lh_score);
                alpha_l.push_back(o.fit->alpha_hat);
            }
        }

        // correlations
        nlohmann::ordered_json corr;
        corr["si_vs_lh"]["all"] = detail::correlation_json(si_l, lh_l);
        corr["alpha_vs_lh"]["all"] = detail::correlation_json(alpha_l, lh_l);
        corr["se_alpha_vs_n_posts"] = detail::correlation_json(se_a, npost);
        corr["se_beta_vs_n_posts"] = detail::correlation_json(se_b, npost);
        if(cats_text)
        {
            for(auto c : all_categories)
            {
                std::vector<double> xs, ys, as;
                for(const auto &a : cats.assignments)
                {
                    if(!a.categories.contains(c))
                        continue;
                    auto it = by_id.find(a.topic_id);
                    if(it == by_id.end() || !it->second->metrics->lh_score)
                        continue;
                    xs.push_back(it->second->metrics->speed_index);
                    ys.push_back(*it->second->metrics->lh_score);
                    as.push_back(it->second->fit->alpha_hat);
                }
                if(xs.empty())
                    continue;
                corr["si_vs_lh"][std::string(to_string(c))] = detail::correlation_json(xs, ys);
                corr["alpha_vs_lh"][std::string(to_string(c))] = detail::correlation_json(as, ys);
            }
        }
        detail::write_file(cfg.out_dir / "correlations.json", corr.dump(2) + "\n");

        nlohmann::ordered_json summary;
        summary["n_topics"] = outcomes.size();
        std::size_t n_fitted = 0, n_converged = 0;
        for(const auto &o : outcomes)
            if(o.fit)
            {
                ++n_fitted;
                n_converged += o.fit->converged;
            }
        summary["n_fitted"] = n_fitted;
        summary["n_converged"] = n_converged;
        summary["bin_width_days"] = cfg.bin_width_days;
        summary["lh_mode"] = std::string(to_string(cfg.lh_mode));
        summary["alpha_level"] = cfg.alpha_level;
        summary["skipped"] = nlohmann::ordered_json::array();
        for(const auto &o : outcomes)
            if(o.skip_reason)
                summary["skipped"].push_back({{"topic_id", o.topic_id}, {"reason", *o.skip_reason}, {"detail", o.skip_detail}});
        summary["rejected_lines"] = nlohmann::ordered_json::array();
        for(const auto &r : parsed.rejects)
            summary["rejected_lines"].push_back({{"file", "posts"}, {"line", r.line}, {"reason", r.reason}});
        for(const auto &r : cats.rejects)
            summary["rejected_lines"].push_back({{"file", "categories"}, {"line", r.line}, {"reason", r.reason}});

        std::vector<std::string> warnings;
        summary["category_means"] = nlohmann::ordered_json::array();
        summary["pairwise"] = nlohmann::ordered_json::array();
        if(cats_text)
        {
            std::string means = "category,alpha_mean,alpha_sd,beta_mean,beta_sd,si_mean,si_sd\n";
            auto cell = [](std::optional<double> v) { return v ? format_double(*v) : std::string(); };
            for(auto c : all_categories)
            {
                std::vector<double> a, b, si;
                for(const auto &as : cats.assignments)
                {
                    if(!as.categories.contains(c))
                        continue;
                    auto it = by_id.find(as.topic_id);
                    if(it == by_id.end())
                        continue;
                    a.push_back(it->second->fit->alpha_hat);
                    b.push_back(it->second->fit->beta_hat);
                    si.push_back(it->second->metrics->speed_index);
                }
                if(a.empty())
                    continue;
                auto ma = detail::mean_sd(a), mb = detail::mean_sd(b), ms = detail::mean_sd(si);
                means += std::string(to_string(c)) + "," + cell(ma.mean) + "," + cell(ma.sd) + "," + cell(mb.mean) +
                         "," + cell(mb.sd) + "," + cell(ms.mean) + "," + cell(ms.sd) + "\n";
                summary["category_means"].push_back({{"category", std::string(to_string(c))},
                                                     {"n_topics", a.size()},
                                                     {"alpha_mean", detail::number_or_null(ma.mean)},
                                                     {"alpha_sd", detail::number_or_null(ma.sd)},
                                                     {"beta_mean", detail::number_or_null(mb.mean)},
                                                     {"beta_sd", detail::number_or_null(mb.sd)},
                                                     {"si_mean", detail::number_or_null(ms.mean)},
                                                     {"si_sd", detail::number_or_null(ms.sd)}});
            }
            detail::write_file(cfg.out_dir / "category_means.csv", means);

            std::vector<PairwiseTestMatrix> matrices;
            for(auto metric : all_metrics)
            {
                try
                {
                    auto m = pairwise_category_tests(values[metric], cats.assignments, to_string(metric), cfg.alpha_level);
                    for(const auto &w : m.warnings)
                        warnings.push_back(std::string(to_string(metric)) + ": " + w);
                    detail::write_file(cfg.out_dir / "matrices" / (std::string(to_string(metric)) + ".csv"), matrix_csv(m));
                    summary["pairwise"].push_back({{"metric", m.metric_name},
                                                   {"n_pairs", m.n_pairs},
                                                   {"threshold", m.corrected_threshold},
                                                   {"frac_significant", m.frac_significant},
                                                   {"fixed_threshold", fixed_threshold},
                                                   {"frac_significant_fixed", m.frac_significant_fixed}});
                    matrices.push_back(std::move(m));
                }
                catch(const Error &e)
                {
                    warnings.push_back(std::string(to_string(metric)) + ": " + e.what());
                }
            }
            if(!matrices.empty())
                detail::write_file(cfg.out_dir / "matrices" / "significance_summary.csv",
                                   significance_summary_csv(matrices));
        }
        summary["warnings"] = warnings;
        detail::write_file(cfg.out_dir / "summary.json", summary.dump(2) + "\n");

        if(cfg.plots)
        {
            for(const auto &o : outcomes)
            {
                if(!o.fit)
                    continue;
                std::vector<std::pair<double, double>> obs, fitted;
                for(const auto &b : o.series->bins)
                    obs.emplace_back(b.t, b.cumulative_fraction);
                const double T = o.series->horizon_T;
                for(int i = 0; i <= 200; ++i)
                {
                    const double t = T * i / 200.0;
                    fitted.emplace_back(t, sigmoid(t, o.fit->alpha_hat, o.fit->beta_hat));
                }
                char title[256];
                std::snprintf(title, sizeof(title), "%s  alpha=%.4g  beta=%.4g", o.topic_id.c_str(), o.fit->alpha_hat,
                              o.fit->beta_hat);
                detail::write_file(cfg.out_dir / "plots" / ("curve_" + detail::safe_name(o.topic_id) + ".svg"),
                                   svg::curve_plot(title, obs, fitted));
            }
            std::vector<std::pair<double, double>> pts;
            for(std::size_t i = 0; i < si_l.size(); ++i)
                pts.emplace_back(si_l[i], lh_l[i]);
            detail::write_file(cfg.out_dir / "plots" / "si_vs_lh.svg",
                               svg::scatter_plot("Speed Index vs Love-Hate score", pts, "Speed Index",
                                                 "Love-Hate score", 0.0, 1.0, -1.0, 1.0));
        }

        const bool partial = !summary["skipped"].empty() || !summary["rejected_lines"].empty();
        std::string msg = "analyzed " + std::to_string(outcomes.size()) + " topics (" + std::to_string(n_fitted) +
                          " fitted, " + std::to_string(n_converged) + " converged)";
        return {partial ? exit_partial : exit_ok, msg};
    }

    // ------------------------------------------------------------------ simulate

    struct SimulateConfig
    {
        fs::path spec_path;
        fs::path out_dir;
        std::optional<std::uint64_t> seed;
        unsigned jobs = 1;
    };

    inline std::string designed_csv(std::span<const SynthSpec> specs)
    {
        std::string s = "topic_id,alpha,beta,horizon_days,n_posts,lh_target,speed_index\n";
        for(const auto &sp : specs)
            s += csv_field(sp.topic_id) + "," + format_double(sp.alpha_true) + "," + format_double(sp.beta_true) + "," +
                 format_double(sp.horizon_T) + "," + std::to_string(sp.n_posts) + "," + format_double(sp.lh_target) +
                 "," + format_double(speed_index(sp.alpha_true, sp.beta_true, sp.horizon_T)) + "\n";
        return s;
    }

    inline CommandResult cmd_simulate(const SimulateConfig &cfg)
    {
        auto text = detail::read_file(cfg.spec_path);
        if(!text)
            return {exit_input_error, "cannot read spec file " + cfg.spec_path.string()};
        auto j = nlohmann::json::parse(*text, nullptr, false);
        if(j.is_discarded())
            return {exit_input_error, "spec file is not valid JSON"};
        try
        {
            auto design = parse_corpus_spec(j, cfg.seed);
            auto corpus = generate_corpus(design.specs, design.categories, cfg.jobs);
            detail::write_file(cfg.out_dir / "posts.jsonl", corpus.posts_jsonl);
            detail::write_file(cfg.out_dir / "categories.csv", corpus.categories_csv);
            detail::write_file(cfg.out_dir / "designed.csv", designed_csv(design.specs));
            return {exit_ok, "generated " + std::to_string(design.specs.size()) + " topics"};
        }
        catch(const Error &e)
        {
            return {exit_input_error, e.what()};
        }
    }

    // ------------------------------------------------------------ extract-topics

    struct ExtractConfig
    {
        fs::path articles_path;
        std::optional<fs::path> stopwords_path; ///< defaults to the bundled English list
        fs::path out_dir;
        std::uint64_t seed = 0;
        std::size_t terms_per_article = 10;
        std::size_t report_terms = 10;
        double resolution = 1.0;
        unsigned jobs = 1;
    };

    inline fs::path bundled_stopwords()
    {
        return fs::path(ENGAGE_DATA_DIR) / "stopwords_en.txt";
    }

    inline CommandResult cmd_extract_topics(const ExtractConfig &cfg)
    {
        auto text = detail::read_file(cfg.articles_path);
        if(!text)
            return {exit_input_error, "cannot read articles file " + cfg.articles_path.string()};
        const fs::path sw_path = cfg.stopwords_path.value_or(bundled_stopwords());
        auto sw_text = detail::read_file(sw_path);
        if(!sw_text)
            return {exit_input_error, "cannot read stopwords file " + sw_path.string()};
        std::istringstream swin(*sw_text);
        const auto stopwords = read_stopwords(swin);

        struct RawArticle
        {
            std::string id;
            std::optional<std::string> text;
            std::vector<std::string> terms;
        };
        std::vector<RawArticle> raw;
        std::vector<LineReject> rejects;
        {
            std::istringstream in(*text);
            std::string line;
            std::size_t lineno = 0;
            while(std::getline(in, line))
            {
                ++lineno;
                if(detail::trim(line).empty())
                    continue;
                auto j = nlohmann::json::parse(line, nullptr, false);
                if(j.is_discarded() || !j.is_object() || !j.contains("article_id") || !j["article_id"].is_string())
                {
                    rejects.push_back({lineno, "expected an object with string article_id"});
                    continue;
                }
                RawArticle a;
                a.id = j["article_id"].get<std::string>();
                if(j.contains("text") && j["text"].is_string())
                    a.text = j["text"].get<std::string>();
                else if(j.contains("terms") && j["terms"].is_array() &&
                        std::all_of(j["terms"].begin(), j["terms"].end(), [](const auto &t) { return t.is_string(); }))
                    a.terms = j["terms"].get<std::vector<std::string>>();
                else
                {
                    rejects.push_back({lineno, "article needs 'text' (string) or 'terms' (array of strings)"});
                    continue;
                }
                raw.push_back(std::move(a));
            }
        }
        if(raw.empty())
            return {exit_input_error, "empty corpus"};

        std::vector<std::optional<ArticleTerms>> extracted(raw.size());
        parallel_for(raw.size(), cfg.jobs, [&](std::size_t i) {
            try
            {
                if(raw[i].text)
                    extracted[i] = extract_terms(raw[i].id, *raw[i].text, stopwords, cfg.terms_per_article);
                else
                    extracted[i] = extract_terms_from_tokens(raw[i].id, raw[i].terms, stopwords, cfg.terms_per_article);
            }
            catch(const Error &)
            {
                extracted[i].reset();
            }
        });
        std::vector<ArticleTerms> articles;
        std::vector<std::string> empty_articles;
        for(std::size_t i = 0; i < raw.size(); ++i)
        {
            if(extracted[i])
                articles.push_back(std::move(*extracted[i]));
            else
                empty_articles.push_back(raw[i].id);
        }
        if(articles.empty())
            return {exit_input_error, "empty corpus"};

        auto graph = louvain(project(articles), cfg.seed, cfg.resolution);
        auto clusters = cluster_report(graph, cfg.report_terms);

        std::string edges = "term1,term2,weight\n";
        for(const auto &e : graph.edges)
            edges += csv_field(e.a) + "," + csv_field(e.b) + "," + format_double(e.weight) + "\n";
        std::string partition = "term,community\n";
        for(std::size_t i = 0; i < graph.nodes.size(); ++i)
            partition += csv_field(graph.nodes[i]) + "," + std::to_string((*graph.partition)[i]) + "\n";
        std::string report = "community,rank,term,weighted_degree\n";
        for(const auto &c : clusters)
            for(std::size_t r = 0; r < c.terms.size(); ++r)
                report += std::to_string(c.community) + "," + std::to_string(r + 1) + "," + csv_field(c.terms[r].term) +
                          "," + format_double(c.terms[r].weighted_degree) + "\n";

        nlohmann::ordered_json summary;
        summary["n_articles"] = articles.size();
        summary["n_terms"] = graph.nodes.size();
        summary["n_edges"] = graph.edges.size();
        summary["n_communities"] = clusters.size();
        summary["modularity"] = *graph.modularity;
        summary["modularity_trace"] = graph.modularity_trace;
        summary["seed"] = cfg.seed;
        summary["empty_articles"] = empty_articles;
        summary["rejected_lines"] = nlohmann::ordered_json::array();
        for(const auto &r : rejects)
            summary["rejected_lines"].push_back({{"line", r.line}, {"reason", r.reason}});

        detail::write_file(cfg.out_dir / "edges.csv", edges);
        detail::write_file(cfg.out_dir / "partition.csv", partition);
        detail::write_file(cfg.out_dir / "clusters.csv", report);
        detail::write_file(cfg.out_dir / "topics_summary.json", summary.dump(2) + "\n");

        const bool partial = !empty_articles.empty() || !rejects.empty();
        return {partial ? exit_partial : exit_ok,
                std::to_string(clusters.size()) + " communities over " + std::to_string(graph.nodes.size()) + " terms"};
    }
}

#endif
