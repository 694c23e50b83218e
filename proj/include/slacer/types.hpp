#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace slacer {

// Index of a peer in [0, N). Stable for the lifetime of a run.
using NodeId = std::uint32_t;

enum class Strategy : std::uint8_t { Cooperate, Defect };

constexpr Strategy flipped(Strategy s) noexcept {
  return s == Strategy::Cooperate ? Strategy::Defect : Strategy::Cooperate;
}

constexpr char strategy_code(Strategy s) noexcept {
  return s == Strategy::Cooperate ? 'C' : 'D';
}

// Raised when an API is called outside its documented preconditions.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace slacer
