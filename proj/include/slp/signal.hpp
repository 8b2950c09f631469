#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slp/errors.hpp"

namespace slp {

/// Dense real-valued signal indexed either by node or by oriented edge.
/// The tag keeps node and edge signals from being mixed up.
template <class Tag>
class Signal {
 public:
  Signal() = default;
  explicit Signal(std::size_t size, double fill = 0.0) : values_(size, fill) {}

  /// Throws std::invalid_argument if any entry is NaN or infinite.
  explicit Signal(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw std::invalid_argument("signal entry " + std::to_string(i) +
                                    " is not finite");
      }
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }

  bool all_finite() const noexcept {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> values_;
};

struct NodeTag {};
struct EdgeTag {};

using NodeSignal = Signal<NodeTag>;
using EdgeSignal = Signal<EdgeTag>;

inline double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw SizeMismatch("sup_distance: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

template <class Tag>
double sup_distance(const Signal<Tag>& a, const Signal<Tag>& b) {
  return sup_distance(a.values(), b.values());
}

template <class Tag>
double dot(const Signal<Tag>& a, const Signal<Tag>& b) {
  if (a.size() != b.size()) throw SizeMismatch("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace slp
