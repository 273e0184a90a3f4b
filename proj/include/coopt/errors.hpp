// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace coopt {

// Raised when a level-agent call cannot be paid for from the remaining budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The model endpoint stayed unreachable through all configured retries.
class ProviderUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every request of an n-way sample failed.
class SampleFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The model could not produce a usable input-generator script within the
// attempt limit; the program is excluded from optimization.
class ScriptGenerationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownFixture : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The original program no longer builds; nothing useful can be returned.
class FatalEnvironment : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace coopt
