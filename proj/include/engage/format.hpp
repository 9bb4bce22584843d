/// engage/format.hpp
///
/// Locale-independent number formatting and small CSV helpers.

#ifndef ENGAGE_FORMAT_HPP_
#define ENGAGE_FORMAT_HPP_

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace engage
{
    /// Shortest round-trip representation; "nan"/"inf" for non-finite values.
    inline std::string format_double(double v)
    {
        if(std::isnan(v))
            return "nan";
        if(std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    /// Quotes a CSV field when it contains a separator, quote or newline.
    inline std::string csv_field(std::string_view s)
    {
        if(s.find_first_of(",\"\n\r") == std::string_view::npos)
            return std::string(s);
        std::string out = "\"";
        for(char c : s)
        {
            if(c == '"')
                out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    /// Splits one CSV record. Handles double-quoted fields with "" escapes;
    /// does not support embedded newlines.
    inline std::vector<std::string> split_csv_line(std::string_view line)
    {
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for(std::size_t i = 0; i < line.size(); ++i)
        {
            char c = line[i];
            if(quoted)
            {
                if(c == '"')
                {
                    if(i + 1 < line.size() && line[i + 1] == '"')
                    {
                        cur += '"';
                        ++i;
                    }
                    else
                    {
                        quoted = false;
                    }
                }
                else
                {
                    cur += c;
                }
            }
            else if(c == '"')
            {
                quoted = true;
            }
            else if(c == ',')
            {
                fields.push_back(std::move(cur));
                cur.clear();
            }
            else if(c != '\r')
            {
                cur += c;
            }
        }
        fields.push_back(std::move(cur));
        return fields;
    }
}

#endif
