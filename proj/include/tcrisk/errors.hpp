#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcrisk {

/// Two values that should live on the same Space do not.
struct SpaceMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A paste was requested where the conditional source has zero mass on a
/// block that must receive positive marginal mass (the quotient is 0/0).
struct IllDefinedPasteError : std::runtime_error {
    IllDefinedPasteError(std::size_t block, const std::string& what)
        : std::runtime_error(what), block_index(block) {}
    std::size_t block_index;
};

/// A conditional polytope was requested on a block every test measure ignores.
struct PolarBlockError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation's stated precondition does not hold for the given inputs.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Witness search exhausted all candidate set pairs. This signals an internal
/// contradiction with the classification theorem, not a user error.
struct NoWitnessError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Scenario file rejected; `path` locates the offending element.
struct ScenarioError : std::runtime_error {
    ScenarioError(const std::string& path, const std::string& what)
        : std::runtime_error("scenario error at " + path + ": " + what), element_path(path) {}
    std::string element_path;
};

}  // namespace tcrisk
