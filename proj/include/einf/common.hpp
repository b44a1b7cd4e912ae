#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace einf {

using i64 = std::int64_t;

enum class ErrorKind { Usage, Schema, Insufficient, Internal, Domain };

struct Error : std::runtime_error {
    ErrorKind kind;
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(ErrorKind::Domain, msg); }
[[noreturn]] inline void internal_fail(const std::string& msg) { throw Error(ErrorKind::Internal, msg); }
[[noreturn]] inline void insufficient(const std::string& msg) { throw Error(ErrorKind::Insufficient, msg); }

inline i64 factorial(int n)
{
    i64 r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

inline i64 binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    i64 r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

}  // namespace einf
