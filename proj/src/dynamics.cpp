#include "improv/dynamics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace improv {

DynamicsWindow::DynamicsWindow(std::uint32_t tau) : capacity_(tau) {
  if (tau == 0) throw std::invalid_argument("dynamics window needs tau >= 1");
}

double DynamicsWindow::push(int intensity) {
  if (intensity < 1 || intensity > 127) {
    throw std::out_of_range("intensity " + std::to_string(intensity) + " outside 1..127");
  }
  if (ring_.size() == capacity_) {
    sum_ -= static_cast<std::uint64_t>(ring_.front());
    ring_.pop_front();
  }
  ring_.push_back(intensity);
  sum_ += static_cast<std::uint64_t>(intensity);
  return static_cast<double>(sum_) / static_cast<double>(ring_.size());
}

void DynamicsWindow::resize(std::uint32_t tau) {
  if (tau == 0) throw std::invalid_argument("dynamics window needs tau >= 1");
  capacity_ = tau;
  while (ring_.size() > capacity_) {
    sum_ -= static_cast<std::uint64_t>(ring_.front());
    ring_.pop_front();
  }
}

std::optional<double> DynamicsWindow::average() const {
  if (ring_.empty()) return std::nullopt;
  return static_cast<double>(sum_) / static_cast<double>(ring_.size());
}

Factor compute_factor(std::optional<double> user_avg, std::optional<double> comp_avg) {
  if (!user_avg || !comp_avg || *comp_avg <= 0.0) return Factor{1.0, true};
  return Factor{*user_avg / *comp_avg, false};
}

Factor compute_factor(const DynamicsWindow& user, const DynamicsWindow& comp) {
  if (user.empty() || comp.empty()) return Factor{1.0, true};
  // (su / nu) / (sc / nc) with a single rounding.
  const double num = static_cast<double>(user.sum() * comp.count());
  const double den = static_cast<double>(comp.sum() * user.count());
  return Factor{num / den, false};
}

int rescale(int intensity, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("rescale factor must be positive");
  const double scaled = std::floor(intensity * factor + 0.5);
  return static_cast<int>(std::clamp(scaled, 1.0, 127.0));
}

}  // namespace improv
