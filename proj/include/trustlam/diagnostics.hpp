#pragma once

#include <stdexcept>
#include <string>

namespace trustlam {

struct Diagnostic {
    std::string code;
    std::string message;
    int line = 0;
    int col = 0;
};

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(Diagnostic d)
        : std::runtime_error(d.message + " (line " + std::to_string(d.line) + ", col " +
                             std::to_string(d.col) + ")"),
          diag(std::move(d)) {}
    Diagnostic diag;
};

class TypeError : public std::runtime_error {
  public:
    explicit TypeError(Diagnostic d) : std::runtime_error(d.message), diag(std::move(d)) {}
    Diagnostic diag;
};

/// Internal-invariant violations during evaluation (stuck non-value, fuel
/// exhaustion). Unreachable on well-typed closed programs.
class EvalError : public std::runtime_error {
  public:
    explicit EvalError(Diagnostic d) : std::runtime_error(d.message), diag(std::move(d)) {}
    Diagnostic diag;
};

}  // namespace trustlam
