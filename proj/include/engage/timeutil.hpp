/// engage/timeutil.hpp
///
/// RFC 3339 parsing and formatting at second resolution.

#ifndef ENGAGE_TIMEUTIL_HPP_
#define ENGAGE_TIMEUTIL_HPP_

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace engage
{
    using Instant = std::chrono::sys_seconds;

    inline constexpr double seconds_per_day = 86400.0;

    namespace detail
    {
        inline bool read_digits(std::string_view s, std::size_t pos, std::size_t count, int &out)
        {
            if(pos + count > s.size())
                return false;
            int v = 0;
            for(std::size_t i = 0; i < count; ++i)
            {
                char c = s[pos + i];
                if(c < '0' || c > '9')
                    return false;
                v = v * 10 + (c - '0');
            }
            out = v;
            return true;
        }
    }

    /// Parses `YYYY-MM-DDTHH:MM:SS[.frac](Z|+HH:MM|-HH:MM)`. Fractional
    /// seconds are truncated. Returns nullopt on any syntax or range error.
    inline std::optional<Instant> parse_rfc3339(std::string_view s)
    {
        using namespace std::chrono;
        int year, mon, day, hh, mm, ss;
        if(!detail::read_digits(s, 0, 4, year) || s.size() < 20 || s[4] != '-' ||
           !detail::read_digits(s, 5, 2, mon) || s[7] != '-' ||
           !detail::read_digits(s, 8, 2, day) ||
           (s[10] != 'T' && s[10] != 't' && s[10] != ' ') ||
           !detail::read_digits(s, 11, 2, hh) || s[13] != ':' ||
           !detail::read_digits(s, 14, 2, mm) || s[16] != ':' ||
           !detail::read_digits(s, 17, 2, ss))
            return std::nullopt;

        if(hh > 23 || mm > 59 || ss > 60)
            return std::nullopt;
        year_month_day ymd{std::chrono::year{year}, month{static_cast<unsigned>(mon)},
                           std::chrono::day{static_cast<unsigned>(day)}};
        if(!ymd.ok())
            return std::nullopt;

        std::size_t pos = 19;
        if(pos < s.size() && s[pos] == '.')
        {
            ++pos;
            std::size_t start = pos;
            while(pos < s.size() && s[pos] >= '0' && s[pos] <= '9')
                ++pos;
            if(pos == start)
                return std::nullopt;
        }
        if(pos >= s.size())
            return std::nullopt;

        int offset_sec = 0;
        if(s[pos] == 'Z' || s[pos] == 'z')
        {
            ++pos;
        }
        else if(s[pos] == '+' || s[pos] == '-')
        {
            int oh, om;
            if(!detail::read_digits(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
               !detail::read_digits(s, pos + 4, 2, om) || oh > 23 || om > 59)
                return std::nullopt;
            offset_sec = (oh * 3600 + om * 60) * (s[pos] == '-' ? -1 : 1);
            pos += 6;
        }
        else
        {
            return std::nullopt;
        }
        if(pos != s.size())
            return std::nullopt;

        Instant local = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
        return local - seconds{offset_sec};
    }

    /// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
    inline std::string format_rfc3339(Instant t)
    {
        using namespace std::chrono;
        auto dp = floor<days>(t);
        year_month_day ymd{dp};
        hh_mm_ss hms{t - dp};
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                      static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                      static_cast<unsigned>(ymd.day()), static_cast<int>(hms.hours().count()),
                      static_cast<int>(hms.minutes().count()),
                      static_cast<int>(hms.seconds().count()));
        return buf;
    }

    inline double days_between(Instant from, Instant to)
    {
        return static_cast<double>((to - from).count()) / seconds_per_day;
    }
}

#endif
