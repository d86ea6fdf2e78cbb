// Current dynamics: the mean intensity over the last tau notes of a stream,
// and the rescaling that pulls the computer's loudness toward the user's.

#pragma once

#include <cstdint>
#include <deque>
#include <optional>

namespace improv {

class DynamicsWindow {
 public:
  /// Throws std::invalid_argument for tau == 0.
  explicit DynamicsWindow(std::uint32_t tau);

  /// Adds one intensity (1..127), evicting the oldest when full, and returns
  /// the new average. Throws std::out_of_range for an invalid intensity.
  double push(int intensity);

  /// Changes the capacity, evicting the oldest entries if it shrinks.
  void resize(std::uint32_t tau);

  std::uint32_t capacity() const { return capacity_; }
  std::size_t count() const { return ring_.size(); }
  std::uint64_t sum() const { return sum_; }
  bool empty() const { return ring_.empty(); }
  std::optional<double> average() const;
  const std::deque<int>& contents() const { return ring_; }

 private:
  std::uint32_t capacity_;
  std::deque<int> ring_;
  std::uint64_t sum_ = 0;
};

inline DynamicsWindow window_new(std::uint32_t tau) { return DynamicsWindow(tau); }

struct Factor {
  double value = 1.0;
  /// Set when either side had no data and the identity factor was used.
  bool degenerate = false;
};

Factor compute_factor(std::optional<double> user_avg, std::optional<double> comp_avg);

/// Ratio of the two window means, computed from the exact integer sums.
Factor compute_factor(const DynamicsWindow& user, const DynamicsWindow& comp);

/// clamp(round_half_up(intensity * factor), 1, 127). Throws
/// std::invalid_argument for a non-positive factor.
int rescale(int intensity, double factor);

}  // namespace improv
