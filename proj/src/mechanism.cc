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

#include "ivlab/mechanism.h"

#include <algorithm>

#include "ivlab/bipartite_matching.h"
#include "ivlab/errors.h"

namespace ivlab {

namespace {

constexpr int kUnknown = -2;
constexpr int kMaxEnumeratedAgents = 20;

ElementSet All(const Instance& instance) { return instance.agents(); }

}  // namespace

Rational AuctionOutcome::Revenue() const {
  Rational total = 0;
  for (const auto& a : agents) total += a.payment;
  return total;
}

Rational AuctionOutcome::Welfare(const Instance& instance, size_t flat) const {
  Rational total = 0;
  for (size_t i = 0; i < agents.size(); ++i) {
    if (sgn(agents[i].alloc) != 0) total += agents[i].alloc * instance.Value(static_cast<int>(i), flat);
  }
  return total;
}

MaskedProfile::MaskedProfile(const SignalGrid& grid, size_t flat, int hidden_agent)
    : grid_(&grid),
      flat_(flat),
      slice_(hidden_agent >= 0 ? grid.Replace(flat, hidden_agent, 0) : flat),
      hidden_(hidden_agent) {}

int MaskedProfile::Index(int agent) const {
  if (agent == hidden_) {
    throw AuditError("reserve rule read the own signal of agent " + std::to_string(agent));
  }
  return grid_->Coordinate(flat_, agent);
}

const Rational& MaskedProfile::Signal(int agent) const { return grid_->value(agent, Index(agent)); }

namespace {

class OwnSignalReserve : public ReserveRule {
 public:
  std::string name() const override { return "own-signal"; }
  bool reads_own_signal() const override { return true; }
  Rational Reserve(const Instance& instance, int agent, const MaskedProfile& others) const override {
    const SignalGrid& grid = instance.grid();
    size_t flat = grid.Replace(others.slice(), agent, others.Index(agent));
    const Rational& top = instance.Value(agent, grid.Replace(flat, agent, grid.size(agent) - 1));
    const Rational& bottom = instance.Value(agent, grid.Replace(flat, agent, 0));
    return top + bottom - instance.Value(agent, flat);
  }
};

}  // namespace

std::shared_ptr<const ReserveRule> OwnSignalReserveForTesting() {
  return std::make_shared<OwnSignalReserve>();
}

std::string MechanismName(MechanismId id) {
  switch (id) {
    case MechanismId::kGvcg:
      return "gvcg";
    case MechanismId::kGvcgLazy:
      return "gvcg-lazy";
    case MechanismId::kLookahead:
      return "lookahead";
    case MechanismId::kRandSingle:
      return "rand-single";
    case MechanismId::kRandMatroid:
      return "rand-matroid";
    case MechanismId::kVcgEager:
      return "vcg-eager";
  }
  return "unknown";
}

MechanismId ParseMechanismId(const std::string& name) {
  for (MechanismId id : {MechanismId::kGvcg, MechanismId::kGvcgLazy, MechanismId::kLookahead,
                         MechanismId::kRandSingle, MechanismId::kRandMatroid, MechanismId::kVcgEager}) {
    if (MechanismName(id) == name) return id;
  }
  throw DomainError("unknown mechanism '" + name + "'");
}

std::string ReserveSourceName(ReserveSource source) {
  switch (source) {
    case ReserveSource::kNone:
      return "none";
    case ReserveSource::kMonopoly:
      return "monopoly";
    case ReserveSource::kConditional:
      return "conditional";
    case ReserveSource::kFixed:
      return "fixed";
    case ReserveSource::kSingleSample:
      return "single-sample";
  }
  return "unknown";
}

ReserveSource ParseReserveSource(const std::string& name) {
  for (ReserveSource s : {ReserveSource::kNone, ReserveSource::kMonopoly, ReserveSource::kConditional,
                          ReserveSource::kFixed, ReserveSource::kSingleSample}) {
    if (ReserveSourceName(s) == name) return s;
  }
  throw DomainError("unknown reserve source '" + name + "'");
}

std::string MechanismConfig::Label() const {
  std::string label = MechanismName(id);
  if (id == MechanismId::kGvcgLazy || id == MechanismId::kVcgEager) {
    if (reserve_rule) {
      label += "[" + reserve_rule->name() + "]";
    } else if (reserve_source != ReserveSource::kNone) {
      label += "[" + ReserveSourceName(reserve_source) + "]";
    }
  }
  if ((id == MechanismId::kRandSingle || id == MechanismId::kRandMatroid) &&
      conditioning == ReserveConditioning::kOthersOnly) {
    label += "[others-only]";
  }
  return label;
}

ScalarDistribution ValueMarginal(const Instance& instance, int agent) {
  std::vector<Atom> atoms;
  for (size_t flat : instance.dist().support_flat()) {
    atoms.push_back({instance.Value(agent, flat), instance.dist().Probability(flat)});
  }
  return ScalarDistribution(std::move(atoms));
}

std::vector<Realization> EnumerateRealizations(const Instance& instance, const MechanismConfig& config) {
  const int n = instance.num_agents();
  std::vector<Realization> out;
  auto subsets = [&](const Rational& in, const Rational& out_p, const Rational& scale,
                     const std::string& prefix) {
    if (n > kMaxEnumeratedAgents) throw SizeError("admission enumeration limited to 20 agents");
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      ElementSet z(bits);
      Rational w = scale;
      for (int i = 0; i < n; ++i) w *= z.Contains(i) ? in : out_p;
      out.push_back({w, z, {}, prefix + z.ToString()});
    }
  };
  switch (config.id) {
    case MechanismId::kRandSingle:
      subsets(Rational(2, 3), Rational(1, 3), Rational(1), "Z=");
      return out;
    case MechanismId::kRandMatroid:
      out.push_back({Rational(1, 2), All(instance), {}, "all"});
      subsets(Rational(1, 2), Rational(1, 2), Rational(1, 2), "sub:Z=");
      return out;
    case MechanismId::kGvcgLazy:
    case MechanismId::kVcgEager:
      if (config.reserve_source == ReserveSource::kSingleSample && !config.reserve_rule) {
        std::vector<ScalarDistribution> marginals;
        for (int i = 0; i < n; ++i) marginals.push_back(ValueMarginal(instance, i));
        Realization base{Rational(1), All(instance), {}, "r="};
        auto expand = [&](auto&& self, int agent, Realization current) -> void {
          if (agent == n) {
            out.push_back(std::move(current));
            return;
          }
          for (const Atom& atom : marginals[static_cast<size_t>(agent)].atoms()) {
            Realization next = current;
            next.weight *= atom.probability;
            next.reserves.push_back(atom.value);
            next.label += (agent ? "," : "") + ToString(atom.value);
            self(self, agent + 1, std::move(next));
          }
        };
        expand(expand, 0, base);
        return out;
      }
      break;
    default:
      break;
  }
  out.push_back({Rational(1), All(instance), {}, "deterministic"});
  return out;
}

Realization SampleRealization(const Instance& instance, const MechanismConfig& config,
                              std::mt19937_64& rng) {
  const int n = instance.num_agents();
  Realization r{Rational(1), All(instance), {}, "sampled"};
  switch (config.id) {
    case MechanismId::kRandSingle:
      r.admitted = ElementSet();
      for (int i = 0; i < n; ++i) {
        if (UniformUnit(rng) < 2.0 / 3.0) r.admitted.Insert(i);
      }
      return r;
    case MechanismId::kRandMatroid:
      if (UniformUnit(rng) < 0.5) return r;
      r.admitted = ElementSet();
      for (int i = 0; i < n; ++i) {
        if (UniformUnit(rng) < 0.5) r.admitted.Insert(i);
      }
      return r;
    case MechanismId::kGvcgLazy:
    case MechanismId::kVcgEager:
      if (config.reserve_source == ReserveSource::kSingleSample && !config.reserve_rule) {
        for (int i = 0; i < n; ++i) {
          ScalarDistribution d = ValueMarginal(instance, i);
          double u = UniformUnit(rng);
          double cumulative = 0;
          Rational pick = d.atoms().back().value;
          for (const Atom& atom : d.atoms()) {
            cumulative += ToDouble(atom.probability);
            if (u < cumulative) {
              pick = atom.value;
              break;
            }
          }
          r.reserves.push_back(pick);
        }
      }
      return r;
    default:
      return r;
  }
}

Auctioneer::Auctioneer(const Instance& instance)
    : instance_(&instance), monopoly_(static_cast<size_t>(instance.num_agents())) {}

Auctioneer::Table& Auctioneer::TableFor(ElementSet active) {
  auto it = tables_.find(active.bits());
  if (it != tables_.end()) return it->second;
  Table t;
  const size_t g = instance_->grid().num_profiles();
  t.winners.resize(g);
  t.known.assign(g, 0);
  t.thresholds.assign(g * static_cast<size_t>(instance_->num_agents()), kUnknown);
  return tables_.emplace(active.bits(), std::move(t)).first->second;
}

ElementSet Auctioneer::Winners(size_t flat, ElementSet active) {
  Table& t = TableFor(active);
  if (!t.known[flat]) {
    const int n = instance_->num_agents();
    std::vector<Rational> weights(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) weights[static_cast<size_t>(i)] = instance_->Value(i, flat);
    t.winners[flat] =
        instance_->feas().MaxWeightBasis(weights, instance_->tie_break(), BasisMode::kFull, active).elements;
    t.known[flat] = 1;
  }
  return t.winners[flat];
}

int Auctioneer::ThresholdIndex(int agent, size_t flat, ElementSet active) {
  if (!active.Contains(agent)) return kNeverWins;
  const SignalGrid& grid = instance_->grid();
  size_t slice = grid.Replace(flat, agent, 0);
  size_t key = static_cast<size_t>(agent) * grid.num_profiles() + slice;
  int cached = TableFor(active).thresholds[key];
  if (cached != kUnknown) return cached;
  int found = kNeverWins;
  for (int k = 0; k < grid.size(agent); ++k) {
    if (Winners(grid.Replace(slice, agent, k), active).Contains(agent)) {
      found = k;
      break;
    }
  }
  TableFor(active).thresholds[key] = found;
  return found;
}

Rational Auctioneer::ThresholdValue(int agent, size_t flat, ElementSet active) {
  int k = ThresholdIndex(agent, flat, active);
  if (k == kNeverWins) return Rational(0);
  return instance_->Value(agent, instance_->grid().Replace(flat, agent, k));
}

ReserveQuote Auctioneer::ComputeQuote(int agent, size_t slice, ReserveEvent event, ElementSet active) {
  const SignalGrid& grid = instance_->grid();
  ReserveQuote q;
  q.agent = agent;
  q.event = event;
  q.active = active;
  std::vector<Rational> weights = instance_->dist().SliceWeights(agent, slice);
  auto mass_from = [&](int lo) {
    Rational m = 0;
    for (size_t k = static_cast<size_t>(std::max(lo, 0)); k < weights.size(); ++k) m += weights[k];
    return m;
  };
  int lo = 0;
  if (event == ReserveEvent::kWinnerConditioned) {
    lo = ThresholdIndex(agent, slice, active);
    if (lo == kNeverWins || sgn(mass_from(lo)) == 0) {
      q.fallback = "winner event has probability zero; unconditioned reserve used";
      lo = 0;
    }
  }
  Rational mass = mass_from(lo);
  if (sgn(mass) == 0) {
    q.fallback = "conditioning slice has probability zero; reserve 0 used";
    ++fallbacks_;
    return q;
  }
  if (!q.fallback.empty()) ++fallbacks_;
  q.min_index = lo;
  std::vector<Atom> atoms;
  for (int k = lo; k < grid.size(agent); ++k) {
    const Rational& w = weights[static_cast<size_t>(k)];
    if (sgn(w) == 0) continue;
    atoms.push_back({instance_->Value(agent, grid.Replace(slice, agent, k)), w / mass});
  }
  PricePoint best = MonopolyPrice(ScalarDistribution(std::move(atoms)));
  q.price = best.price;
  q.revenue = best.revenue;
  return q;
}

const ReserveQuote& Auctioneer::ConditionalMonopolyReserve(int agent, size_t flat, ReserveEvent event,
                                                           ElementSet active) {
  size_t slice = instance_->grid().Replace(flat, agent, 0);
  std::uint64_t active_key = event == ReserveEvent::kWinnerConditioned ? active.bits() : 0;
  auto key = std::make_tuple(agent, slice, static_cast<int>(event), active_key);
  auto it = quotes_.find(key);
  if (it != quotes_.end()) return it->second;
  return quotes_.emplace(key, ComputeQuote(agent, slice, event, active)).first->second;
}

const Rational& Auctioneer::MonopolyReserve(int agent) {
  auto& slot = monopoly_[static_cast<size_t>(agent)];
  if (!slot) slot = std::make_unique<Rational>(MonopolyPrice(ValueMarginal(*instance_, agent)).price);
  return *slot;
}

AuctionOutcome Auctioneer::Base(size_t flat, ElementSet active) {
  instance_->RequireSingleCrossing("gvcg");
  const int n = instance_->num_agents();
  AuctionOutcome out;
  out.agents.resize(static_cast<size_t>(n));
  out.admitted = active;
  out.tentative = Winners(flat, active);
  for (int i : active.ToVector()) {
    AgentOutcome& a = out.agents[static_cast<size_t>(i)];
    a.threshold_index = ThresholdIndex(i, flat, active);
    if (a.threshold_index != kNeverWins) {
      a.threshold_value = instance_->Value(i, instance_->grid().Replace(flat, i, a.threshold_index));
    }
  }
  return out;
}

void Auctioneer::ApplyPrices(AuctionOutcome& out, size_t flat) {
  for (int i : out.tentative.ToVector()) {
    AgentOutcome& a = out.agents[static_cast<size_t>(i)];
    Rational price = std::max(a.reserve, a.threshold_value);
    if (instance_->Value(i, flat) >= price) {
      out.served.Insert(i);
      a.alloc = 1;
      a.payment = price;
    }
  }
}

AuctionOutcome Auctioneer::Gvcg(size_t flat, ElementSet active) {
  AuctionOutcome out = Base(flat, active);
  ApplyPrices(out, flat);
  return out;
}

AuctionOutcome Auctioneer::GvcgLazy(size_t flat, const std::vector<Rational>& reserves, ElementSet active) {
  if (reserves.size() != static_cast<size_t>(instance_->num_agents())) {
    throw DomainError("gvcg-lazy: one reserve per agent required");
  }
  AuctionOutcome out = Base(flat, active);
  for (int i : active.ToVector()) out.agents[static_cast<size_t>(i)].reserve = reserves[static_cast<size_t>(i)];
  ApplyPrices(out, flat);
  return out;
}

AuctionOutcome Auctioneer::GvcgLazy(size_t flat, const ReserveRule& rule, ElementSet active) {
  AuctionOutcome out = Base(flat, active);
  for (int i : out.tentative.ToVector()) {
    MaskedProfile others(instance_->grid(), flat, rule.reads_own_signal() ? -1 : i);
    if (rule.reads_own_signal()) others.slice_ = instance_->grid().Replace(flat, i, 0);
    out.agents[static_cast<size_t>(i)].reserve = rule.Reserve(*instance_, i, others);
  }
  ApplyPrices(out, flat);
  return out;
}

AuctionOutcome Auctioneer::Lookahead(size_t flat) {
  return GvcgLStar(flat, All(*instance_), ReserveConditioning::kWinnerInAdmitted);
}

AuctionOutcome Auctioneer::GvcgLStar(size_t flat, ElementSet admitted, ReserveConditioning conditioning) {
  AuctionOutcome out = Base(flat, admitted);
  ReserveEvent event = conditioning == ReserveConditioning::kWinnerInAdmitted
                           ? ReserveEvent::kWinnerConditioned
                           : ReserveEvent::kUnconditioned;
  for (int i : out.tentative.ToVector()) {
    out.agents[static_cast<size_t>(i)].reserve = ConditionalMonopolyReserve(i, flat, event, admitted).price;
  }
  ApplyPrices(out, flat);
  return out;
}

AuctionOutcome Auctioneer::RandomizedSingleItem(size_t flat, ElementSet admitted,
                                                ReserveConditioning conditioning) {
  if (!instance_->single_item()) {
    throw WrongVariantError("rand-single needs a single-item (1-uniform) feasibility system");
  }
  return GvcgLStar(flat, admitted, conditioning);
}

AuctionOutcome Auctioneer::RandomizedMatroid(size_t flat, ElementSet admitted,
                                             ReserveConditioning conditioning) {
  if (!instance_->feas().is_matroid()) {
    throw WrongVariantError("rand-matroid needs a matroid feasibility system");
  }
  return GvcgLStar(flat, admitted, conditioning);
}

AuctionOutcome Auctioneer::VcgEager(size_t flat, const std::vector<Rational>& reserves) {
  if (!instance_->private_values()) {
    throw WrongVariantError("vcg-eager is defined for private values only");
  }
  const int n = instance_->num_agents();
  if (reserves.size() != static_cast<size_t>(n)) throw DomainError("vcg-eager: one reserve per agent required");
  ElementSet kept;
  for (int j = 0; j < n; ++j) {
    if (instance_->Value(j, flat) >= reserves[static_cast<size_t>(j)]) kept.Insert(j);
  }
  AuctionOutcome out = Base(flat, kept);
  out.admitted = All(*instance_);
  for (int i = 0; i < n; ++i) out.agents[static_cast<size_t>(i)].reserve = reserves[static_cast<size_t>(i)];
  ApplyPrices(out, flat);
  return out;
}

std::vector<Rational> Auctioneer::ReservesFor(const MechanismConfig& config, size_t flat,
                                              const Realization& realization) {
  const int n = instance_->num_agents();
  if (!realization.reserves.empty()) return realization.reserves;
  std::vector<Rational> r(static_cast<size_t>(n));
  switch (config.reserve_source) {
    case ReserveSource::kNone:
      break;
    case ReserveSource::kMonopoly:
      for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)] = MonopolyReserve(i);
      break;
    case ReserveSource::kConditional:
      for (int i = 0; i < n; ++i) {
        r[static_cast<size_t>(i)] =
            ConditionalMonopolyReserve(i, flat, ReserveEvent::kUnconditioned, All(*instance_)).price;
      }
      break;
    case ReserveSource::kFixed:
      if (config.fixed_reserves.size() != static_cast<size_t>(n)) {
        throw DomainError("fixed reserves need one value per agent");
      }
      r = config.fixed_reserves;
      break;
    case ReserveSource::kSingleSample:
      throw PreconditionError("single-sample reserves come from a realization");
  }
  return r;
}

AuctionOutcome Auctioneer::Run(const MechanismConfig& config, size_t flat, const Realization& realization) {
  switch (config.id) {
    case MechanismId::kGvcg:
      return Gvcg(flat, All(*instance_));
    case MechanismId::kGvcgLazy:
      if (config.reserve_rule) return GvcgLazy(flat, *config.reserve_rule, All(*instance_));
      return GvcgLazy(flat, ReservesFor(config, flat, realization), All(*instance_));
    case MechanismId::kLookahead:
      return Lookahead(flat);
    case MechanismId::kRandSingle:
      return RandomizedSingleItem(flat, realization.admitted, config.conditioning);
    case MechanismId::kRandMatroid:
      return RandomizedMatroid(flat, realization.admitted, config.conditioning);
    case MechanismId::kVcgEager:
      return VcgEager(flat, ReservesFor(config, flat, realization));
  }
  throw DomainError("unknown mechanism");
}

AuctionOutcome Gvcg(const Instance& instance, const Profile& s, ElementSet active) {
  Auctioneer a(instance);
  return a.Gvcg(instance.grid().Flatten(s), active);
}

ReserveQuote ConditionalMonopolyReserve(const Instance& instance, int agent, const Profile& s,
                                        ReserveEvent event, ElementSet active) {
  Auctioneer a(instance);
  return a.ConditionalMonopolyReserve(agent, instance.grid().Flatten(s), event, active);
}

AuctionOutcome GvcgLazy(const Instance& instance, const Profile& s, const std::vector<Rational>& reserves,
                        ElementSet active) {
  Auctioneer a(instance);
  return a.GvcgLazy(instance.grid().Flatten(s), reserves, active);
}

AuctionOutcome Lookahead(const Instance& instance, const Profile& s) {
  Auctioneer a(instance);
  return a.Lookahead(instance.grid().Flatten(s));
}

AuctionOutcome RandomizedSingleItem(const Instance& instance, const Profile& s, ElementSet admitted) {
  Auctioneer a(instance);
  return a.RandomizedSingleItem(instance.grid().Flatten(s), admitted);
}

AuctionOutcome RandomizedSingleItem(const Instance& instance, const Profile& s, std::mt19937_64& rng) {
  MechanismConfig config;
  config.id = MechanismId::kRandSingle;
  return RandomizedSingleItem(instance, s, SampleRealization(instance, config, rng).admitted);
}

AuctionOutcome RandomizedMatroid(const Instance& instance, const Profile& s, ElementSet admitted) {
  Auctioneer a(instance);
  return a.RandomizedMatroid(instance.grid().Flatten(s), admitted);
}

AuctionOutcome RandomizedMatroid(const Instance& instance, const Profile& s, std::mt19937_64& rng) {
  MechanismConfig config;
  config.id = MechanismId::kRandMatroid;
  return RandomizedMatroid(instance, s, SampleRealization(instance, config, rng).admitted);
}

AuctionOutcome VcgEager(const Instance& instance, const Profile& s, const std::vector<Rational>& reserves) {
  Auctioneer a(instance);
  return a.VcgEager(instance.grid().Flatten(s), reserves);
}

std::map<int, int> ThresholdMatching(Auctioneer& auctioneer, size_t flat, ElementSet w, ElementSet tp) {
  const Instance& instance = auctioneer.instance();
  const FeasibilitySystem& feas = instance.feas();
  if (!feas.is_matroid()) throw UnsupportedOperation("threshold_matching requires a matroid");
  if (!(w & tp).Empty() || !feas.IsIndependent(tp)) {
    throw PreconditionError("threshold_matching: T' must be independent and disjoint from W");
  }
  if (tp.Size() > w.Size()) throw PreconditionError("threshold_matching: T' larger than W");
  ElementSet padded = tp;
  for (int e : instance.tie_break().Sorted(w)) {
    if (padded.Size() == w.Size()) break;
    if (feas.IsIndependent(padded.With(e))) padded.Insert(e);
  }
  if (padded.Size() != w.Size()) throw PreconditionError("threshold_matching: W is not a basis");

  const SignalGrid& grid = instance.grid();
  std::vector<int> left = tp.ToVector();
  for (int e : (padded - tp).ToVector()) left.push_back(e);
  std::vector<int> right = w.ToVector();
  std::vector<std::vector<int>> adjacency(left.size());
  for (size_t r = 0; r < right.size(); ++r) {
    int i = right[r];
    int k = auctioneer.ThresholdIndex(i, flat, instance.agents());
    if (k == kNeverWins) throw PreconditionError("threshold_matching: W is not the winner set");
    size_t at = grid.Replace(flat, i, k);
    for (size_t l = 0; l < left.size(); ++l) {
      if (instance.Value(left[l], at) <= instance.Value(i, at)) adjacency[l].push_back(static_cast<int>(r));
    }
  }
  std::vector<int> match = MaxBipartiteMatching(static_cast<int>(left.size()), static_cast<int>(right.size()),
                                                adjacency);
  if (MatchingSize(match) != static_cast<int>(left.size())) {
    throw InvariantViolation("threshold_matching: no perfect matching at profile " + std::to_string(flat));
  }
  std::map<int, int> out;
  for (size_t l = 0; l < static_cast<size_t>(tp.Size()); ++l) {
    out[left[l]] = right[static_cast<size_t>(match[l])];
  }
  return out;
}

std::map<int, int> ThresholdMatching(const Instance& instance, const Profile& s, ElementSet w, ElementSet tp) {
  Auctioneer a(instance);
  return ThresholdMatching(a, instance.grid().Flatten(s), w, tp);
}

}  // namespace ivlab
