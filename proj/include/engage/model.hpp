/// engage/model.hpp
///
/// Post records, category assignments and normalized cumulative
/// engagement curves.

#ifndef ENGAGE_MODEL_HPP_
#define ENGAGE_MODEL_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "engage/error.hpp"
#include "engage/format.hpp"
#include "engage/timeutil.hpp"

namespace engage
{
    struct PostRecord
    {
        std::string post_id;
        std::string topic_id;
        Instant timestamp;
        std::uint64_t likes = 0;
        std::uint64_t shares = 0;
        std::uint64_t comments = 0;
        std::uint64_t love = 0;
        std::uint64_t angry = 0;

        /// Interactions that drive the engagement curve. Reactions are
        /// deliberately not part of it.
        std::uint64_t engagement() const noexcept
        {
            return likes + shares + comments;
        }

        bool operator==(const PostRecord &) const = default;
    };

    struct LineReject
    {
        std::size_t line;
        std::string reason;
    };

    struct PostParseResult
    {
        std::vector<PostRecord> records;
        std::vector<LineReject> rejects;
    };

    inline constexpr std::array<std::string_view, 8> post_fields = {
        "post_id", "topic_id", "timestamp", "likes", "shares", "comments", "love", "angry"};

    namespace detail
    {
        inline std::string trim(std::string_view s)
        {
            auto b = s.find_first_not_of(" \t\r\n");
            if(b == std::string_view::npos)
                return {};
            auto e = s.find_last_not_of(" \t\r\n");
            return std::string(s.substr(b, e - b + 1));
        }

        inline std::optional<std::string> parse_post_line(const std::string &line, PostRecord &out)
        {
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if(j.is_discarded())
                return "malformed JSON";
            if(!j.is_object())
                return "record is not a JSON object";
            if(j.size() != post_fields.size())
                return "record must have exactly the fields post_id, topic_id, timestamp, likes, shares, comments, love, angry";
            for(auto f : post_fields)
                if(!j.contains(f))
                    return "missing field '" + std::string(f) + "'";

            if(!j["post_id"].is_string() || !j["topic_id"].is_string() || !j["timestamp"].is_string())
                return "post_id, topic_id and timestamp must be strings";
            out.post_id = j["post_id"].get<std::string>();
            out.topic_id = j["topic_id"].get<std::string>();
            if(out.topic_id.empty())
                return "empty topic_id";
            auto ts = parse_rfc3339(j["timestamp"].get<std::string>());
            if(!ts)
                return "timestamp is not RFC 3339";
            out.timestamp = *ts;

            auto count = [&](std::string_view name, std::uint64_t &dst) -> std::optional<std::string> {
                const auto &v = j[std::string(name)];
                if(v.is_number_unsigned())
                {
                    dst = v.get<std::uint64_t>();
                    return std::nullopt;
                }
                if(v.is_number_integer())
                    return "field '" + std::string(name) + "' is negative";
                return "field '" + std::string(name) + "' is not a non-negative integer";
            };
            for(auto [name, dst] : {std::pair{"likes", &out.likes}, {"shares", &out.shares},
                                    {"comments", &out.comments}, {"love", &out.love}, {"angry", &out.angry}})
                if(auto err = count(name, *dst))
                    return err;
            return std::nullopt;
        }
    }

    /// Reads JSON-lines post records. Blank lines are skipped; every other
    /// line that fails validation is reported with its 1-based line number.
    inline PostParseResult parse_posts(std::istream &in)
    {
        PostParseResult result;
        std::string line;
        std::size_t lineno = 0;
        while(std::getline(in, line))
        {
            ++lineno;
            if(detail::trim(line).empty())
                continue;
            PostRecord rec;
            if(auto err = detail::parse_post_line(line, rec))
                result.rejects.push_back({lineno, *err});
            else
                result.records.push_back(std::move(rec));
        }
        return result;
    }

    inline std::string to_jsonl(const PostRecord &p)
    {
        nlohmann::ordered_json j;
        j["post_id"] = p.post_id;
        j["topic_id"] = p.topic_id;
        j["timestamp"] = format_rfc3339(p.timestamp);
        j["likes"] = p.likes;
        j["shares"] = p.shares;
        j["comments"] = p.comments;
        j["love"] = p.love;
        j["angry"] = p.angry;
        return j.dump();
    }

    // ---------------------------------------------------------------- categories

    enum class Category
    {
        Art_Culture_Sport,
        Economy,
        Environment,
        Health,
        Human_Rights,
        Labor,
        Politics,
        Religion,
        Social,
        Tech_Sci,
    };

    inline constexpr std::array<Category, 10> all_categories = {
        Category::Art_Culture_Sport, Category::Economy, Category::Environment, Category::Health,
        Category::Human_Rights, Category::Labor, Category::Politics, Category::Religion,
        Category::Social, Category::Tech_Sci};

    inline std::string_view to_string(Category c)
    {
        constexpr std::array<std::string_view, 10> names = {
            "Art_Culture_Sport", "Economy", "Environment", "Health", "Human_Rights",
            "Labor", "Politics", "Religion", "Social", "Tech_Sci"};
        return names[static_cast<std::size_t>(c)];
    }

    inline std::optional<Category> parse_category(std::string_view s)
    {
        for(auto c : all_categories)
            if(to_string(c) == s)
                return c;
        return std::nullopt;
    }

    struct CategoryAssignment
    {
        std::string topic_id;
        std::set<Category> categories;
    };

    struct CategoryParseResult
    {
        /// Sorted by topic_id.
        std::vector<CategoryAssignment> assignments;
        std::vector<LineReject> rejects;
    };

    /// Reads the `topic_id,category` CSV (one row per pair). A missing or
    /// wrong header is a hard error; bad rows are reported per line.
    inline CategoryParseResult parse_categories(std::istream &in)
    {
        CategoryParseResult result;
        std::string line;
        std::size_t lineno = 0;
        bool header = false;
        std::map<std::string, std::set<Category>> acc;
        while(std::getline(in, line))
        {
            ++lineno;
            if(detail::trim(line).empty())
                continue;
            auto fields = split_csv_line(line);
            if(!header)
            {
                if(fields.size() != 2 || detail::trim(fields[0]) != "topic_id" ||
                   detail::trim(fields[1]) != "category")
                    fail(ErrorKind::InvalidInput, "category file must start with header 'topic_id,category'");
                header = true;
                continue;
            }
            if(fields.size() != 2)
            {
                result.rejects.push_back({lineno, "expected 2 fields"});
                continue;
            }
            auto topic = detail::trim(fields[0]);
            auto cat = parse_category(detail::trim(fields[1]));
            if(topic.empty())
                result.rejects.push_back({lineno, "empty topic_id"});
            else if(!cat)
                result.rejects.push_back({lineno, "unknown category '" + detail::trim(fields[1]) + "'"});
            else
                acc[topic].insert(*cat);
        }
        for(auto &[topic, cats] : acc)
            result.assignments.push_back({topic, std::move(cats)});
        return result;
    }

    inline std::string to_csv(std::span<const CategoryAssignment> assignments)
    {
        std::string out = "topic_id,category\n";
        for(const auto &a : assignments)
            for(auto c : a.categories)
                out += csv_field(a.topic_id) + "," + std::string(to_string(c)) + "\n";
        return out;
    }

    // ---------------------------------------------------------------- series

    struct SeriesPoint
    {
        double t;                   ///< days since t0
        double cumulative_fraction; ///< in [0, 1]
    };

    struct TopicSeries
    {
        std::string topic_id;
        Instant t0;
        std::vector<SeriesPoint> bins;
        std::uint64_t total_engagement = 0;
        std::size_t n_posts = 0;
        double horizon_T = 0.0;

        bool operator==(const TopicSeries &o) const
        {
            if(topic_id != o.topic_id || t0 != o.t0 || total_engagement != o.total_engagement ||
               n_posts != o.n_posts || horizon_T != o.horizon_T || bins.size() != o.bins.size())
                return false;
            for(std::size_t i = 0; i < bins.size(); ++i)
                if(bins[i].t != o.bins[i].t || bins[i].cumulative_fraction != o.bins[i].cumulative_fraction)
                    return false;
            return true;
        }
    };

    namespace detail
    {
        inline TopicSeries build_series_impl(std::span<const PostRecord> posts, std::string_view topic_id,
                                             double bin_width, std::optional<Instant> origin)
        {
            if(!(bin_width > 0.0) || !std::isfinite(bin_width))
                fail(ErrorKind::InvalidInput, "bin width must be positive");

            std::vector<const PostRecord *> mine;
            for(const auto &p : posts)
                if(p.topic_id == topic_id)
                    mine.push_back(&p);
            if(mine.size() < 2)
                fail(ErrorKind::InsufficientData, "topic '" + std::string(topic_id) + "' has fewer than 2 posts");

            Instant first = mine.front()->timestamp;
            std::uint64_t total = 0;
            for(auto *p : mine)
            {
                first = std::min(first, p->timestamp);
                total += p->engagement();
            }
            if(total == 0)
                fail(ErrorKind::ZeroEngagement, "topic '" + std::string(topic_id) + "' has zero total engagement");

            Instant t0 = origin.value_or(first);
            if(first < t0)
                fail(ErrorKind::InvalidInput, "post precedes the series origin");

            const double bin_seconds = bin_width * seconds_per_day;
            std::map<std::int64_t, std::uint64_t> per_bin;
            for(auto *p : mine)
            {
                auto secs = static_cast<double>((p->timestamp - t0).count());
                per_bin[static_cast<std::int64_t>(std::floor(secs / bin_seconds))] += p->engagement();
            }
            const std::int64_t last = per_bin.rbegin()->first;
            if(last == 0)
                fail(ErrorKind::InsufficientData, "topic '" + std::string(topic_id) + "' spans a single time bin");

            TopicSeries s;
            s.topic_id = std::string(topic_id);
            s.t0 = t0;
            s.total_engagement = total;
            s.n_posts = mine.size();
            s.horizon_T = static_cast<double>(last) * bin_width;
            s.bins.reserve(static_cast<std::size_t>(last) + 1);
            std::uint64_t cum = 0;
            auto it = per_bin.begin();
            for(std::int64_t k = 0; k <= last; ++k)
            {
                if(it != per_bin.end() && it->first == k)
                {
                    cum += it->second;
                    ++it;
                }
                // integer sums: the final bin divides total by itself, giving exactly 1.0
                s.bins.push_back({static_cast<double>(k) * bin_width,
                                  static_cast<double>(cum) / static_cast<double>(total)});
            }
            return s;
        }
    }

    /// Builds the normalized cumulative engagement curve of one topic,
    /// measuring time in days from the topic's earliest post.
    inline TopicSeries build_series(std::span<const PostRecord> posts, std::string_view topic_id,
                                    double bin_width = 1.0)
    {
        return detail::build_series_impl(posts, topic_id, bin_width, std::nullopt);
    }

    /// As above, with an explicit time origin (e.g. a known topic start).
    /// Every post must be at or after `origin`.
    inline TopicSeries build_series(std::span<const PostRecord> posts, std::string_view topic_id,
                                    double bin_width, Instant origin)
    {
        return detail::build_series_impl(posts, topic_id, bin_width, origin);
    }
}

#endif
