#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cosetcodes {

// A matrix (or enumeration) would exceed the configured memory budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller broke a documented precondition (even parity where odd is required, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultMemoryCap = std::size_t{1} << 30;

namespace detail {
inline std::atomic<std::size_t>& memory_cap_slot() {
  static std::atomic<std::size_t> cap{kDefaultMemoryCap};
  return cap;
}
}  // namespace detail

/// Upper bound, in bytes, on any single dense matrix the library allocates.
inline std::size_t memory_cap() { return detail::memory_cap_slot().load(std::memory_order_relaxed); }

inline void set_memory_cap(std::size_t bytes) {
  if (bytes == 0) throw ParameterError("memory cap must be positive");
  detail::memory_cap_slot().store(bytes, std::memory_order_relaxed);
}

// Restores the previous cap on scope exit.
class ScopedMemoryCap {
 public:
  explicit ScopedMemoryCap(std::size_t bytes) : saved_(memory_cap()) { set_memory_cap(bytes); }
  ~ScopedMemoryCap() { detail::memory_cap_slot().store(saved_); }
  ScopedMemoryCap(const ScopedMemoryCap&) = delete;
  ScopedMemoryCap& operator=(const ScopedMemoryCap&) = delete;

 private:
  std::size_t saved_;
};

inline void check_capacity(std::size_t bytes, const std::string& what) {
  if (bytes > memory_cap()) {
    throw CapacityError(what + " needs " + std::to_string(bytes) + " bytes, cap is " +
                        std::to_string(memory_cap()));
  }
}

}  // namespace cosetcodes
