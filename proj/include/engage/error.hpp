/// engage/error.hpp
///
/// Exception types shared by every engage module.

#ifndef ENGAGE_ERROR_HPP_
#define ENGAGE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace engage
{
    enum class ErrorKind
    {
        InvalidInput,
        InsufficientData,
        ZeroEngagement,
        DegenerateFit,
        DomainError,
        UndefinedCorrelation,
        EmptyArticle,
    };

    inline std::string_view to_string(ErrorKind kind)
    {
        switch(kind)
        {
        case ErrorKind::InvalidInput:         return "InvalidInput";
        case ErrorKind::InsufficientData:     return "InsufficientData";
        case ErrorKind::ZeroEngagement:       return "ZeroEngagement";
        case ErrorKind::DegenerateFit:        return "DegenerateFit";
        case ErrorKind::DomainError:          return "DomainError";
        case ErrorKind::UndefinedCorrelation: return "UndefinedCorrelation";
        case ErrorKind::EmptyArticle:         return "EmptyArticle";
        }
        return "Unknown";
    }

    /// Base error. kind() identifies the failure class so callers can
    /// report it (e.g. as the skip reason of a topic) without string matching.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string &what)
            : std::runtime_error(what), _kind(kind)
        { }

        ErrorKind kind() const noexcept
        {
            return _kind;
        }

    private:
        ErrorKind _kind;
    };

    [[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
    {
        throw Error(kind, std::string(to_string(kind)) + ": " + what);
    }
}

#endif
