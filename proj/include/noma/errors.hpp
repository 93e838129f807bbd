#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace noma {

/// Scenario validation failure; carries one message per violated invariant.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid configuration:";
        for (const auto& s : issues) out += "\n  - " + s;
        return out;
    }

    std::vector<std::string> issues_;
};

/// A closed form was asked to evaluate outside its validity region; the
/// general engine handles such configurations.
class ConditionViolated : public std::domain_error {
    using std::domain_error::domain_error;
};

/// An evaluator was invoked on a scenario shape it does not cover.
class WrongEngine : public std::logic_error {
    using std::logic_error::logic_error;
};

/// Requested tolerance could not be met within the iteration budget.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace noma
