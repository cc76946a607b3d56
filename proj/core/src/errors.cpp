#include "splab/errors.hpp"

#include <algorithm>

namespace splab {

namespace {

thread_local HypothesisWaiver* current = nullptr;

}  // namespace

HypothesisWaiver::HypothesisWaiver() : previous_(current) { current = this; }

HypothesisWaiver::~HypothesisWaiver() { current = previous_; }

HypothesisWaiver* active_waiver() { return current; }

AdoptedWaiver::AdoptedWaiver(HypothesisWaiver* waiver) : previous_(current) { current = waiver; }

AdoptedWaiver::~AdoptedWaiver() { current = previous_; }

void require_hypothesis(bool ok, const std::string& message) {
  if (ok) return;
  if (current != nullptr) {
    std::lock_guard lock(current->mutex_);
    auto& v = current->violations_;
    if (std::find(v.begin(), v.end(), message) == v.end()) v.push_back(message);
    return;
  }
  throw HypothesisError(message);
}

}  // namespace splab
