#include "iwave/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace iwave {
namespace {

std::mutex& log_mutex() {
  static std::mutex m;
  return m;
}

bool quiet() {
  const char* env = std::getenv("IWAVE_QUIET");
  return env != nullptr && std::string(env) != "0";
}

bool verbose() {
  const char* env = std::getenv("IWAVE_VERBOSE");
  return env != nullptr && std::string(env) != "0";
}

}  // namespace

void log_warning(std::string_view message) {
  if (quiet()) return;
  std::lock_guard<std::mutex> lock(log_mutex());
  std::cerr << "iwave: warning: " << message << '\n';
}

void log_info(std::string_view message) {
  if (!verbose()) return;
  std::lock_guard<std::mutex> lock(log_mutex());
  std::cerr << "iwave: " << message << '\n';
}

}  // namespace iwave
