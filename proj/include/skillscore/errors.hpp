#ifndef SKILLSCORE_ERRORS_HPP
#define SKILLSCORE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skillscore {

// Caller asked for something unusable (bad flag combination, mismatched
// inputs). CLI maps this to exit code 1.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or unusable input data (malformed files, empty datasets, degenerate
// inputs). CLI maps this to exit code 2.
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure during computation. CLI maps this to exit code 3.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Fewer observations than parameters.
struct insufficient_data_error : data_error {
    explicit insufficient_data_error(const std::string& msg) : data_error(msg) {}
};

// Design matrix is rank deficient; `column` is the first offending column.
struct singular_design_error : numeric_error {
    std::size_t column;
    singular_design_error(std::size_t col, const std::string& msg)
        : numeric_error(msg), column(col) {}
};

}  // namespace skillscore

#endif  // SKILLSCORE_ERRORS_HPP
