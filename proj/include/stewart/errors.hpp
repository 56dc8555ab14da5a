#pragma once

#include <stdexcept>
#include <string>

namespace stewart {

// Pose or velocity outside the representable range (gimbal lock, collapsed
// leg) or a matrix too ill-conditioned to invert safely.
class SingularityError : public std::runtime_error {
  public:
    SingularityError(const std::string& what, double condition_number)
        : std::runtime_error(what), condition_number_(condition_number) {}

    double condition_number() const { return condition_number_; }

  private:
    double condition_number_;
};

// Iterative solve exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, int iterations)
        : std::runtime_error(what), iterations_(iterations) {}

    int iterations() const { return iterations_; }

  private:
    int iterations_;
};

// Bad configuration value; key() names the offending entry ("run.dt").
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("config error at '" + key + "': " + what), key_(key) {}

    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

// Wraps any module error raised inside the closed-loop run with the step
// index at which it occurred.
class SimError : public std::runtime_error {
  public:
    SimError(int step, const std::string& what)
        : std::runtime_error("simulation step " + std::to_string(step) + ": " + what),
          step_(step) {}

    int step() const { return step_; }

  private:
    int step_;
};

}  // namespace stewart
