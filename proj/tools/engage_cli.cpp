// engage: topic extraction, engagement-curve analysis and synthetic corpora.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "engage/commands.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"engage - engagement dynamics toolkit"};
    app.require_subcommand(1);

    std::string input, out, categories, stopwords, lh_mode = "pooled";
    double bin_width = 1.0, alpha_level = 0.05;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool plots = false;

    auto *extract = app.add_subcommand("extract-topics", "Keyword co-occurrence graph and Louvain communities");
    extract->add_option("--input", input, "Articles JSON-lines file")->required();
    extract->add_option("--out", out, "Output directory")->required();
    extract->add_option("--stopwords", stopwords, "Stopword list (one term per line); bundled English list by default");
    extract->add_option("--seed", seed, "Seed for the node visit order");
    extract->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto *analyze = app.add_subcommand("analyze", "Fit engagement curves and compute metrics and tests");
    analyze->add_option("--input", input, "Posts JSON-lines file")->required();
    analyze->add_option("--categories", categories, "topic_id,category CSV");
    analyze->add_option("--out", out, "Output directory")->required();
    analyze->add_option("--bin-width-days", bin_width, "Time bin width in days")->check(CLI::PositiveNumber);
    analyze->add_option("--lh-mode", lh_mode, "Love-Hate aggregation")->check(CLI::IsMember({"pooled", "mean"}));
    analyze->add_option("--alpha-level", alpha_level, "Family-wise significance level");
    analyze->add_option("--seed", seed, "Unused by analyze; accepted for a uniform interface");
    analyze->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    analyze->add_flag("--plots", plots, "Write SVG plots");

    std::optional<std::uint64_t> sim_seed;
    auto *simulate = app.add_subcommand("simulate", "Generate a synthetic corpus from a JSON spec");
    simulate->add_option("--input", input, "Corpus spec JSON")->required();
    simulate->add_option("--out", out, "Output directory")->required();
    simulate->add_option("--seed", sim_seed, "Overrides the spec's seed");
    simulate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    engage::CommandResult res;
    try
    {
        if(*extract)
        {
            engage::ExtractConfig cfg;
            cfg.articles_path = input;
            if(!stopwords.empty())
                cfg.stopwords_path = stopwords;
            cfg.out_dir = out;
            cfg.seed = seed;
            cfg.jobs = jobs;
            res = engage::cmd_extract_topics(cfg);
        }
        else if(*analyze)
        {
            engage::AnalyzeConfig cfg;
            cfg.posts_path = input;
            if(!categories.empty())
                cfg.categories_path = categories;
            cfg.out_dir = out;
            cfg.bin_width_days = bin_width;
            cfg.lh_mode = lh_mode == "mean" ? engage::LoveHateMode::MeanOfPosts : engage::LoveHateMode::Pooled;
            cfg.alpha_level = alpha_level;
            cfg.jobs = jobs;
            cfg.plots = plots;
            res = engage::cmd_analyze(cfg);
        }
        else
        {
            engage::SimulateConfig cfg;
            cfg.spec_path = input;
            cfg.out_dir = out;
            cfg.seed = sim_seed;
            cfg.jobs = jobs;
            res = engage::cmd_simulate(cfg);
        }
    }
    catch(const std::exception &e)
    {
        res = {engage::exit_input_error, e.what()};
    }

    if(res.exit_code == engage::exit_input_error)
        std::cerr << "error: " << res.message << "\n";
    else if(!res.message.empty())
        std::cerr << res.message << (res.exit_code == engage::exit_partial ? " (partial, see summary)" : "") << "\n";
    return res.exit_code;
}
