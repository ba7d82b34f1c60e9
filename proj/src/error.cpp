#include "snasa/error.hpp"

#include <iostream>

namespace snasa {

namespace {
std::function<void(const std::string&)>& sink() {
  static std::function<void(const std::string&)> fn;
  return fn;
}
}  // namespace

void warn(const std::string& message) {
  if (sink()) {
    sink()(message);
  } else {
    std::cerr << "warning: " << message << "\n";
  }
}

void set_warning_sink(std::function<void(const std::string&)> fn) {
  sink() = std::move(fn);
}

}  // namespace snasa
