#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace locarray {

// Raised when a wall-clock budget runs out at a checkpoint.
class TimeoutError : public std::runtime_error {
public:
  explicit TimeoutError(const std::string &where)
      : std::runtime_error("timeout reached during " + where) {}
};

// Wall-clock budget checked at safe points (between generations, between
// batches of pair comparisons).  A default-constructed deadline never fires.
class Deadline {
public:
  Deadline() = default;

  static Deadline never() { return Deadline{}; }

  static Deadline after(double seconds) {
    Deadline d;
    d.when_ = std::chrono::steady_clock::now() +
              std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(seconds));
    return d;
  }

  bool expired() const {
    return when_ && std::chrono::steady_clock::now() >= *when_;
  }

  void check(const char *where) const {
    if (expired()) throw TimeoutError(where);
  }

private:
  std::optional<std::chrono::steady_clock::time_point> when_;
};

} // namespace locarray
