// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IVLAB_MECHANISM_H_
#define IVLAB_MECHANISM_H_

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ivlab/distribution.h"
#include "ivlab/element_set.h"
#include "ivlab/instance.h"
#include "ivlab/rational.h"

namespace ivlab {

// Threshold index of an agent that wins at no grid point.
inline constexpr int kNeverWins = -1;

struct AgentOutcome {
  Rational alloc = 0;
  Rational payment = 0;
  int threshold_index = kNeverWins;  // s_i* as a grid index
  Rational threshold_value = 0;      // v_i(s_i*, s_-i); 0 when never wins
  Rational reserve = 0;
};

struct AuctionOutcome {
  std::vector<AgentOutcome> agents;
  ElementSet tentative;  // W
  ElementSet served;
  ElementSet admitted;   // Z; every agent for deterministic mechanisms

  Rational Revenue() const;
  // Sum of true values of served agents at `flat`.
  Rational Welfare(const Instance& instance, size_t flat) const;
};

enum class ReserveEvent {
  // Condition on S_-i and on i winning within the active set.
  kWinnerConditioned,
  // Condition on S_-i only.
  kUnconditioned,
};

struct ReserveQuote {
  int agent = 0;
  ReserveEvent event = ReserveEvent::kUnconditioned;
  ElementSet active;
  int min_index = 0;  // lowest own grid index inside the event
  Rational price = 0;
  // price * P[v_i >= price | event]
  Rational revenue = 0;
  // Empty unless a fallback replaced the requested conditioning.
  std::string fallback;
};

// Others' signals as seen by a reserve rule. Reading the hidden agent's own
// coordinate throws AuditError.
class MaskedProfile {
 public:
  MaskedProfile(const SignalGrid& grid, size_t flat, int hidden_agent);

  int hidden_agent() const { return hidden_; }
  int Index(int agent) const;
  const Rational& Signal(int agent) const;
  // Flat index with the hidden coordinate set to 0; identifies s_-i.
  size_t slice() const { return slice_; }

 private:
  friend class Auctioneer;
  const SignalGrid* grid_;
  size_t flat_;
  size_t slice_;
  int hidden_;
};

// A reserve price r_i computed from s_-i.
class ReserveRule {
 public:
  virtual ~ReserveRule() = default;
  virtual std::string name() const = 0;
  virtual Rational Reserve(const Instance& instance, int agent, const MaskedProfile& others) const = 0;
  // Test hooks that cheat return true and receive an unmasked profile.
  virtual bool reads_own_signal() const { return false; }
};

// Deliberately illegal rule for audit tests: r_i = v_i(top) + v_i(bottom) -
// v_i(s), so reporting a higher signal lowers the price.
std::shared_ptr<const ReserveRule> OwnSignalReserveForTesting();

enum class MechanismId { kGvcg, kGvcgLazy, kLookahead, kRandSingle, kRandMatroid, kVcgEager };
enum class ReserveSource { kNone, kMonopoly, kConditional, kFixed, kSingleSample };
// Reserve conditioning in the randomized variants.
enum class ReserveConditioning {
  // S_-i of every agent and i winning within Z.
  kWinnerInAdmitted,
  // S_-i only.
  kOthersOnly,
};

std::string MechanismName(MechanismId id);
MechanismId ParseMechanismId(const std::string& name);
std::string ReserveSourceName(ReserveSource source);
ReserveSource ParseReserveSource(const std::string& name);

struct MechanismConfig {
  MechanismId id = MechanismId::kGvcg;
  // Used by gvcg-lazy and vcg-eager only.
  ReserveSource reserve_source = ReserveSource::kNone;
  std::vector<Rational> fixed_reserves;
  ReserveConditioning conditioning = ReserveConditioning::kWinnerInAdmitted;
  // Overrides reserve_source for gvcg-lazy.
  std::shared_ptr<const ReserveRule> reserve_rule;

  // "lookahead", "gvcg-lazy[monopoly]", ...
  std::string Label() const;
};

// One outcome of a mechanism's internal randomness.
struct Realization {
  Rational weight = 1;
  ElementSet admitted;
  std::vector<Rational> reserves;  // set when the draw fixes reserves
  std::string label;
};

// Every realization with its probability; weights sum to one.
std::vector<Realization> EnumerateRealizations(const Instance& instance, const MechanismConfig& config);
Realization SampleRealization(const Instance& instance, const MechanismConfig& config,
                              std::mt19937_64& rng);

// Law of v_i(S) under the joint distribution.
ScalarDistribution ValueMarginal(const Instance& instance, int agent);

// Caches winner sets, thresholds and reserve quotes for one instance. Not
// thread-safe; use one per worker.
class Auctioneer {
 public:
  explicit Auctioneer(const Instance& instance);

  const Instance& instance() const { return *instance_; }

  // Max-weight maximal feasible set within `active` at the reported profile.
  ElementSet Winners(size_t flat, ElementSet active);
  // Smallest own grid index at which `agent` joins the winners, others fixed.
  int ThresholdIndex(int agent, size_t flat, ElementSet active);
  Rational ThresholdValue(int agent, size_t flat, ElementSet active);

  // Fallback chain: winner-conditioned -> unconditioned -> price 0, each step
  // taken only when the event has zero probability and counted in
  // fallback_count().
  const ReserveQuote& ConditionalMonopolyReserve(int agent, size_t flat, ReserveEvent event,
                                                 ElementSet active);
  const Rational& MonopolyReserve(int agent);

  AuctionOutcome Gvcg(size_t flat, ElementSet active);
  AuctionOutcome GvcgLazy(size_t flat, const std::vector<Rational>& reserves, ElementSet active);
  AuctionOutcome GvcgLazy(size_t flat, const ReserveRule& rule, ElementSet active);
  AuctionOutcome Lookahead(size_t flat);
  // GVCG-L* on the admitted set.
  AuctionOutcome GvcgLStar(size_t flat, ElementSet admitted, ReserveConditioning conditioning);
  AuctionOutcome RandomizedSingleItem(size_t flat, ElementSet admitted,
                                      ReserveConditioning conditioning = ReserveConditioning::kWinnerInAdmitted);
  AuctionOutcome RandomizedMatroid(size_t flat, ElementSet admitted,
                                   ReserveConditioning conditioning = ReserveConditioning::kWinnerInAdmitted);
  AuctionOutcome VcgEager(size_t flat, const std::vector<Rational>& reserves);

  // Dispatch on a config and one realization of its randomness.
  AuctionOutcome Run(const MechanismConfig& config, size_t flat, const Realization& realization);

  // Reserve vector a config uses at `flat` (gvcg-lazy and vcg-eager).
  std::vector<Rational> ReservesFor(const MechanismConfig& config, size_t flat,
                                    const Realization& realization);

  size_t fallback_count() const { return fallbacks_; }

 private:
  struct Table {
    std::vector<ElementSet> winners;
    std::vector<char> known;
    std::vector<int> thresholds;  // [agent * profiles + slice], -2 = unknown
  };
  Table& TableFor(ElementSet active);
  AuctionOutcome Base(size_t flat, ElementSet active);
  void ApplyPrices(AuctionOutcome& out, size_t flat);
  ReserveQuote ComputeQuote(int agent, size_t slice, ReserveEvent event, ElementSet active);

  const Instance* instance_;
  std::unordered_map<std::uint64_t, Table> tables_;
  std::map<std::tuple<int, size_t, int, std::uint64_t>, ReserveQuote> quotes_;
  std::vector<std::unique_ptr<Rational>> monopoly_;
  size_t fallbacks_ = 0;
};

// Single-profile conveniences over a temporary Auctioneer.
AuctionOutcome Gvcg(const Instance& instance, const Profile& s, ElementSet active);
ReserveQuote ConditionalMonopolyReserve(const Instance& instance, int agent, const Profile& s,
                                        ReserveEvent event, ElementSet active);
AuctionOutcome GvcgLazy(const Instance& instance, const Profile& s, const std::vector<Rational>& reserves,
                        ElementSet active);
AuctionOutcome Lookahead(const Instance& instance, const Profile& s);
// WrongVariantError unless the instance is single-item.
AuctionOutcome RandomizedSingleItem(const Instance& instance, const Profile& s, ElementSet admitted);
// Draws Z with probability 2/3 per agent.
AuctionOutcome RandomizedSingleItem(const Instance& instance, const Profile& s, std::mt19937_64& rng);
// WrongVariantError unless the instance is a matroid.
AuctionOutcome RandomizedMatroid(const Instance& instance, const Profile& s, ElementSet admitted);
// Draws the all-agents branch or a half-rate subsample.
AuctionOutcome RandomizedMatroid(const Instance& instance, const Profile& s, std::mt19937_64& rng);
AuctionOutcome VcgEager(const Instance& instance, const Profile& s, const std::vector<Rational>& reserves);

// Injective f: tp -> w with v_j(s_i*, s_-i) <= v_i(s_i*, s_-i) for j in tp,
// i = f(j). tp is padded with elements of w to a basis first; padded
// elements take part in the matching but are not returned.
std::map<int, int> ThresholdMatching(const Instance& instance, const Profile& s, ElementSet w, ElementSet tp);
std::map<int, int> ThresholdMatching(Auctioneer& auctioneer, size_t flat, ElementSet w, ElementSet tp);

}  // namespace ivlab

#endif  // IVLAB_MECHANISM_H_
