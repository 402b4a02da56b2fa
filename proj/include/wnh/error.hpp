#pragma once

#include <stdexcept>
#include <string>

namespace wnh {

// Base for every error raised by the engine. Refuted or inconclusive
// verdicts are results, not errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// An integrand that is not a total derivative, raised where a local
// antiderivative is required.
class NotExact : public Error {
public:
    using Error::Error;
};

// An exact density whose antiderivative leaves the coefficient ring
// (for example one that would need a logarithm).
class UnsupportedAntiderivative : public Error {
public:
    using Error::Error;
};

// tail o tail composition whose middle density is not exact.
class NotWeaklyNonlocalClosure : public Error {
public:
    NotWeaklyNonlocalClosure(const std::string& density)
        : Error("composition leaves the weakly nonlocal class: middle density " + density +
                " is not a total derivative"),
          density_(density) {}
    const std::string& density() const { return density_; }

private:
    std::string density_;
};

}  // namespace wnh
