#include "edgerent/core.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace edgerent {

std::string_view to_string(Level l) { return l == Level::High ? "H" : "L"; }

Level parse_level(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "h" || lower == "high") return Level::High;
  if (lower == "l" || lower == "low") return Level::Low;
  throw std::invalid_argument("unknown level '" + std::string(text) + "'");
}

CostModel::CostModel(const CostParams& params, bool allow_degenerate) : p_(params) {
  using K = ModelError::Kind;
  if (p_.c_low < Cost{} || p_.w_hl < Cost{} || p_.w_lh < Cost{}) {
    throw ModelError(K::InvalidParameter, "costs must be non-negative");
  }
  if (!(p_.c_low < p_.c_high)) {
    throw ModelError(K::InvalidParameter, "c_low must be strictly below c_high");
  }
  if (p_.kappa_low <= 0) {
    throw ModelError(K::InvalidParameter, "kappa_low must be a positive integer");
  }
  if (p_.kappa_high < p_.kappa_low || (p_.kappa_high == p_.kappa_low && !allow_degenerate)) {
    throw ModelError(K::InvalidParameter, "kappa_low must be strictly below kappa_high");
  }
  if (degenerate() && !allow_degenerate) {
    throw ModelError(K::DegenerateRegime,
                     "kappa_high - kappa_low must exceed c_high - c_low (otherwise LOW is "
                     "always optimal)");
  }
}

Cost CostModel::switch_cost(Level from, Level to) const {
  if (from == to) return Cost{};
  return to == Level::High ? p_.w_lh : p_.w_hl;
}

ArrivalTrace::ArrivalTrace(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("arrival trace must have horizon >= 1");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0) {
      throw std::invalid_argument("negative arrival count at slot " + std::to_string(i + 1));
    }
  }
}

std::int64_t ArrivalTrace::served(std::size_t t, std::int64_t kappa) const {
  return std::min(slot(t), kappa);
}

DecisionTrace::DecisionTrace(std::vector<Level> levels, Level initial_level)
    : levels_(std::move(levels)), initial_(initial_level) {}

std::vector<std::size_t> DecisionTrace::switch_slots() const {
  std::vector<std::size_t> out;
  Level prev = initial_;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i] != prev) out.push_back(i + 1);
    prev = levels_[i];
  }
  return out;
}

void CostLedger::append(Level level, Level previous, const SlotCost& cost) {
  records_.push_back({records_.size() + 1, level, cost});
  rent_ += cost.rent;
  service_ += cost.service;
  switching_ += cost.switching;
  if (level != previous) ++switches_;
}

SlotCost slot_cost(const CostModel& model, std::int64_t arrivals, Level level_now,
                   Level level_prev) {
  const std::int64_t overflow = arrivals - std::min(arrivals, model.cap(level_now));
  return {model.rent(level_now), Cost::units(overflow), model.switch_cost(level_prev, level_now)};
}

CostLedger evaluate(const CostModel& model, const ArrivalTrace& arrivals,
                    const DecisionTrace& decisions) {
  if (arrivals.horizon() != decisions.horizon()) {
    throw std::invalid_argument("decision trace horizon " + std::to_string(decisions.horizon()) +
                                " does not match arrival horizon " +
                                std::to_string(arrivals.horizon()));
  }
  CostLedger ledger;
  Level prev = decisions.initial_level();
  const auto counts = arrivals.counts();
  const auto levels = decisions.levels();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    ledger.append(levels[i], prev, slot_cost(model, counts[i], levels[i], prev));
    prev = levels[i];
  }
  return ledger;
}

}  // namespace edgerent
