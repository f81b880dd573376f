#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace paik {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A physical parameter is out of its admissible range (non-positive length, density, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A call violated an API precondition that is not a physical parameter (empty list, bad grid).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The model is singular at the requested frequency (e.g. sin(kL/2) = 0 for the turns ratio).
class Singularity : public Error {
public:
    Singularity(const std::string& what, double frequency_hz, std::string factor = {})
        : Error(what + " at f = " + std::to_string(frequency_hz) + " Hz" +
                (factor.empty() ? std::string{} : " (factor " + factor + ")")),
          frequency_hz_(frequency_hz), factor_(std::move(factor)) {}

    double frequency_hz() const noexcept { return frequency_hz_; }
    const std::string& factor() const noexcept { return factor_; }

private:
    double frequency_hz_;
    std::string factor_;
};

/// No -N dB crossing inside the frequency grid on the named side of the peak.
class BandUnbounded : public Error {
public:
    enum class Edge { lower, upper };

    explicit BandUnbounded(Edge edge)
        : Error(std::string("band is unbounded at the ") +
                (edge == Edge::lower ? "lower" : "upper") + " edge of the grid"),
          edge_(edge) {}

    Edge edge() const noexcept { return edge_; }

private:
    Edge edge_;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class InfiniteSnr : public Error {
public:
    using Error::Error;
};

/// Config parse or validation failure. Carries every offending field path.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::vector<std::string> fields = {})
        : Error(what), fields_(std::move(fields)) {}

    const std::vector<std::string>& fields() const noexcept { return fields_; }

private:
    std::vector<std::string> fields_;
};

}  // namespace paik
