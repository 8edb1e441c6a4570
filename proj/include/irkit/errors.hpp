#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace irkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed DSL expression or graph6 text.
struct ParseError : Error {
    using Error::Error;
};

// Unknown generator name or parameter outside its valid range.
struct InvalidArgument : Error {
    using Error::Error;
};

// A product, power or solver input exceeds a configured size limit.
struct SizeLimitError : Error {
    using Error::Error;
};

// A search ran out of nodes or time where no inconclusive value can be returned.
struct BudgetExceeded : Error {
    using Error::Error;
};

// Numerical solver did not reach its target accuracy.
struct SolverFailure : Error {
    using Error::Error;
};

// Search limits. Zero seconds means no time limit.
struct Budget {
    std::uint64_t nodes = 50'000'000;
    double seconds = 0.0;

    static Budget unlimited() { return {std::numeric_limits<std::uint64_t>::max(), 0.0}; }
};

// Running counter for one search against a Budget.
class Meter {
public:
    explicit Meter(const Budget& b)
        : limit_(b.nodes), timed_(b.seconds > 0),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(b.seconds > 0 ? b.seconds : 0.0)))
    {}

    // Returns false once the budget is spent; stays false afterwards.
    bool tick()
    {
        if (exhausted_) return false;
        if (++used_ > limit_) return exhausted_ = true, false;
        if (timed_ && (used_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_)
            return exhausted_ = true, false;
        return true;
    }
    bool exhausted() const { return exhausted_; }
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
    bool timed_;
    bool exhausted_ = false;
    std::chrono::steady_clock::time_point deadline_;
};

} // namespace irkit
