#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcpda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Error hierarchy. Everything thrown by the library derives from Error so
// the CLI can report failures uniformly.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class UndefinedMetric : public Error {
public:
    using Error::Error;
};

class IngestionError : public Error {
public:
    using Error::Error;
};

/// Raised when a class covariance cannot be used for density evaluation.
class EstimationError : public Error {
public:
    EstimationError(std::size_t class_index, const std::string& what)
        : Error("class " + std::to_string(class_index) + ": " + what),
          class_index_(class_index) {}

    std::size_t class_index() const noexcept { return class_index_; }

private:
    std::size_t class_index_;
};

/// Raised by the saddle-point solver when the objective stops being finite.
class DivergedOptimization : public Error {
public:
    DivergedOptimization(std::size_t iteration, std::vector<double> trace)
        : Error("TCP objective became non-finite at iteration " +
                std::to_string(iteration)),
          iteration_(iteration),
          trace_(std::move(trace)) {}

    std::size_t iteration() const noexcept { return iteration_; }
    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    std::size_t iteration_;
    std::vector<double> trace_;
};

}  // namespace tcpda
