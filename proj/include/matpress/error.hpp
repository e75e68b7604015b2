#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace matpress {

enum class ErrorKind {
    invalid_input,
    tolerance_not_met,
    budget_exhausted,
    dimension_cap_exceeded,
    parse_error,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a word enumeration would exceed the configured budget.
/// Carries how much of the budget had been consumed at the point of refusal.
class BudgetExhausted : public Error {
public:
    BudgetExhausted(const std::string& what, std::uint64_t words_used,
                    std::size_t word_length)
        : Error(ErrorKind::budget_exhausted, what),
          words_used_(words_used),
          word_length_(word_length) {}

    std::uint64_t words_used() const noexcept { return words_used_; }
    std::size_t word_length() const noexcept { return word_length_; }

private:
    std::uint64_t words_used_;
    std::size_t word_length_;
};

[[noreturn]] inline void invalid_input(const std::string& what) {
    throw Error(ErrorKind::invalid_input, what);
}

}  // namespace matpress
