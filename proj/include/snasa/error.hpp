#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace snasa {

// Malformed or inconsistent input data (files, labels, schemas).
// The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values, divergence, or other numerical failure. Exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad flags, unknown config keys, misuse of the API. Exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-fatal conditions: all-zero embeddings, undersized reference classes,
// all-OOV sentences. Default sink writes "warning: ..." to stderr.
void warn(const std::string& message);

// Replaces the warning sink; pass nullptr to restore the default.
// Not thread safe; set it before spawning workers.
void set_warning_sink(std::function<void(const std::string&)> sink);

}  // namespace snasa
