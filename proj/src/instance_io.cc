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

#include "ivlab/instance_io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ivlab/errors.h"

namespace ivlab {

using nlohmann::json;

namespace {

const json& Require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

const json& RequireArray(const json& obj, const char* key, const std::string& where) {
  const json& v = Require(obj, key, where);
  if (!v.is_array()) throw SchemaError(where + "." + key + ": expected an array");
  return v;
}

int JsonInt(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw SchemaError(field + ": expected an integer");
  return v.get<int>();
}

std::vector<Rational> RationalList(const json& v, const std::string& field) {
  if (!v.is_array()) throw SchemaError(field + ": expected an array");
  std::vector<Rational> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(JsonRational(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> IntList(const json& v, const std::string& field) {
  if (!v.is_array()) throw SchemaError(field + ": expected an array");
  std::vector<int> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(JsonInt(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Profile ProfileField(const SignalGrid& grid, const json& v, const std::string& field) {
  std::vector<Rational> values = RationalList(v, field);
  if (static_cast<int>(values.size()) != grid.num_agents()) {
    throw SchemaError(field + ": expected " + std::to_string(grid.num_agents()) + " signals");
  }
  try {
    return grid.ProfileOf(values);
  } catch (const DomainError& e) {
    throw SchemaError(field + ": " + e.what());
  }
}

json RationalJson(const Rational& q) { return ToString(q); }

Arithmetic ParseArithmetic(const json& dist) {
  if (!dist.contains("arithmetic")) return Arithmetic::kRational;
  std::string a = dist.at("arithmetic").get<std::string>();
  if (a == "rational") return Arithmetic::kRational;
  if (a == "double") return Arithmetic::kDouble;
  throw SchemaError("distribution.arithmetic: expected 'rational' or 'double'");
}

JointDistribution ParseDistribution(const SignalGrid& grid, const json& d) {
  const std::string where = "distribution";
  std::string form = Require(d, "form", where).get<std::string>();
  Arithmetic mode = ParseArithmetic(d);
  try {
    if (form == "product") {
      const json& marginals = RequireArray(d, "marginals", where);
      if (static_cast<int>(marginals.size()) != grid.num_agents()) {
        throw SchemaError("distribution.marginals: expected one marginal per agent");
      }
      std::vector<std::vector<Rational>> m;
      for (size_t i = 0; i < marginals.size(); ++i) {
        m.push_back(RationalList(marginals[i], "distribution.marginals[" + std::to_string(i) + "]"));
      }
      return JointDistribution::Product(grid, std::move(m), mode);
    }
    if (form == "table") {
      const json& entries = RequireArray(d, "entries", where);
      std::vector<std::pair<Profile, Rational>> table;
      for (size_t e = 0; e < entries.size(); ++e) {
        std::string field = "distribution.entries[" + std::to_string(e) + "]";
        table.emplace_back(ProfileField(grid, Require(entries[e], "profile", field), field + ".profile"),
                           JsonRational(Require(entries[e], "p", field), field + ".p"));
      }
      return JointDistribution::Table(grid, std::move(table), mode);
    }
  } catch (const NormalizationError& e) {
    throw NormalizationError(std::string("distribution: ") + e.what());
  } catch (const SchemaError&) {
    throw;
  } catch (const DomainError& e) {
    throw SchemaError(std::string("distribution: ") + e.what());
  }
  throw SchemaError("distribution.form: expected 'product' or 'table'");
}

AdditiveTerms ParseTerms(const SignalGrid& grid, const json& g, const std::string& field) {
  const int n = grid.num_agents();
  if (!g.is_array() || static_cast<int>(g.size()) != n) throw SchemaError(field + ": expected one row per agent");
  AdditiveTerms terms(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const json& row = g[static_cast<size_t>(i)];
    std::string rf = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw SchemaError(rf + ": expected one step function per agent");
    for (int j = 0; j < n; ++j) {
      std::string sf = rf + "[" + std::to_string(j) + "]";
      const json& steps = row[static_cast<size_t>(j)];
      if (!steps.is_array() || steps.empty()) throw SchemaError(sf + ": expected a list of [point, value] steps");
      std::vector<std::pair<Rational, Rational>> pairs;
      for (size_t k = 0; k < steps.size(); ++k) {
        const json& step = steps[k];
        std::string kf = sf + "[" + std::to_string(k) + "]";
        if (!step.is_array() || step.size() != 2) throw SchemaError(kf + ": expected [point, value]");
        pairs.emplace_back(JsonRational(step[0], kf + "[0]"), JsonRational(step[1], kf + "[1]"));
      }
      try {
        terms[static_cast<size_t>(i)].push_back(ValuationProfile::StepFunctionOnGrid(grid.points(j), std::move(pairs)));
      } catch (const DomainError& e) {
        throw SchemaError(sf + ": " + e.what());
      }
    }
  }
  return terms;
}

ValuationProfile ParseValuation(const SignalGrid& grid, const json& v) {
  const std::string where = "valuation";
  std::string family = Require(v, "family", where).get<std::string>();
  if (family == "private") return ValuationProfile::Private(grid);
  if (family == "weighted_sum") {
    return ValuationProfile::WeightedSum(grid, JsonRational(Require(v, "beta", where), "valuation.beta"));
  }
  if (family == "additive") {
    return ValuationProfile::Additive(grid, ParseTerms(grid, Require(v, "g", where), "valuation.g"));
  }
  if (family == "concave_additive") {
    AdditiveTerms terms = ParseTerms(grid, Require(v, "g", where), "valuation.g");
    const json& outer = RequireArray(v, "outer", where);
    std::vector<std::vector<AffinePiece>> pieces;
    for (size_t i = 0; i < outer.size(); ++i) {
      std::string of = "valuation.outer[" + std::to_string(i) + "]";
      if (!outer[i].is_array()) throw SchemaError(of + ": expected a list of [slope, intercept]");
      std::vector<AffinePiece> agent;
      for (size_t k = 0; k < outer[i].size(); ++k) {
        const json& p = outer[i][k];
        std::string pf = of + "[" + std::to_string(k) + "]";
        if (!p.is_array() || p.size() != 2) throw SchemaError(pf + ": expected [slope, intercept]");
        agent.push_back({JsonRational(p[0], pf + "[0]"), JsonRational(p[1], pf + "[1]")});
      }
      pieces.push_back(std::move(agent));
    }
    return ValuationProfile::ConcaveAdditive(grid, std::move(terms), std::move(pieces));
  }
  if (family == "table") {
    const json& values = RequireArray(v, "values", where);
    std::vector<std::vector<Rational>> rows(grid.num_profiles());
    std::vector<char> seen(grid.num_profiles(), 0);
    for (size_t e = 0; e < values.size(); ++e) {
      std::string field = "valuation.values[" + std::to_string(e) + "]";
      size_t flat = grid.Flatten(ProfileField(grid, Require(values[e], "profile", field), field + ".profile"));
      if (seen[flat]) throw SchemaError(field + ": duplicate profile");
      seen[flat] = 1;
      rows[flat] = RationalList(Require(values[e], "v", field), field + ".v");
      if (static_cast<int>(rows[flat].size()) != grid.num_agents()) {
        throw SchemaError(field + ".v: expected one value per agent");
      }
    }
    for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
      if (!seen[flat]) throw SchemaError("valuation.values: no entry for grid profile " + std::to_string(flat));
    }
    return ValuationProfile::Table(grid, std::move(rows));
  }
  throw SchemaError("valuation.family: unknown family '" + family + "'");
}

FeasibilitySystem ParseFeasibility(int n, const json& f) {
  const std::string where = "feasibility";
  std::string kind = Require(f, "kind", where).get<std::string>();
  try {
    if (kind == "uniform") return FeasibilitySystem::Uniform(n, JsonInt(Require(f, "k", where), "feasibility.k"));
    if (kind == "partition") {
      const json& blocks = RequireArray(f, "blocks", where);
      std::vector<std::vector<int>> b;
      for (size_t i = 0; i < blocks.size(); ++i) b.push_back(IntList(blocks[i], "feasibility.blocks[" + std::to_string(i) + "]"));
      return FeasibilitySystem::Partition(n, std::move(b), IntList(Require(f, "capacities", where), "feasibility.capacities"));
    }
    if (kind == "transversal") {
      const json& adj = RequireArray(f, "adjacency", where);
      if (static_cast<int>(adj.size()) != n) throw SchemaError("feasibility.adjacency: expected one row per agent");
      std::vector<std::vector<int>> a;
      for (size_t i = 0; i < adj.size(); ++i) a.push_back(IntList(adj[i], "feasibility.adjacency[" + std::to_string(i) + "]"));
      return FeasibilitySystem::Transversal(std::move(a));
    }
    if (kind == "graphic") {
      const json& edges = RequireArray(f, "edges", where);
      if (static_cast<int>(edges.size()) != n) throw SchemaError("feasibility.edges: expected one edge per agent");
      std::vector<std::pair<int, int>> e;
      for (size_t i = 0; i < edges.size(); ++i) {
        std::vector<int> uv = IntList(edges[i], "feasibility.edges[" + std::to_string(i) + "]");
        if (uv.size() != 2) throw SchemaError("feasibility.edges[" + std::to_string(i) + "]: expected [u, v]");
        e.emplace_back(uv[0], uv[1]);
      }
      return FeasibilitySystem::Graphic(std::move(e));
    }
    if (kind == "explicit") {
      const json& sets = RequireArray(f, "sets", where);
      std::vector<ElementSet> family;
      for (size_t i = 0; i < sets.size(); ++i) {
        family.push_back(ElementSet::FromVector(IntList(sets[i], "feasibility.sets[" + std::to_string(i) + "]")));
      }
      return FeasibilitySystem::Explicit(n, std::move(family));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const DomainError& e) {
    throw SchemaError(std::string("feasibility: ") + e.what());
  }
  throw SchemaError("feasibility.kind: unknown kind '" + kind + "'");
}

}  // namespace

Rational JsonRational(const json& value, const std::string& field) {
  try {
    if (value.is_string()) return ParseRational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
    if (value.is_number_float()) return RationalFromDecimalDouble(value.get<double>());
  } catch (const DomainError& e) {
    throw SchemaError(field + ": " + e.what());
  }
  throw SchemaError(field + ": expected a number or a numeric string");
}

namespace {

Instance ParseInstanceChecked(const json& doc, const std::string& default_name) {
  if (!doc.is_object()) throw SchemaError("instance: expected a JSON object");
  std::string name = doc.contains("name") ? doc.at("name").get<std::string>() : default_name;
  const json& agents = Require(doc, "agents", "instance");
  int n = 0;
  if (agents.is_number_integer()) {
    n = agents.get<int>();
  } else if (agents.is_array()) {
    n = static_cast<int>(agents.size());
  } else {
    throw SchemaError("agents: expected a count or a list of names");
  }
  if (n < 0 || n > kMaxElements) throw SchemaError("agents: count must be in [0, 64]");
  const json& grid_json = RequireArray(doc, "grid", "instance");
  if (static_cast<int>(grid_json.size()) != n) throw SchemaError("grid: expected one list per agent");
  std::vector<std::vector<Rational>> points;
  for (size_t i = 0; i < grid_json.size(); ++i) points.push_back(RationalList(grid_json[i], "grid[" + std::to_string(i) + "]"));
  SignalGrid grid = [&] {
    try {
      return SignalGrid(std::move(points));
    } catch (const DomainError& e) {
      throw SchemaError(std::string("grid: ") + e.what());
    }
  }();
  JointDistribution dist = ParseDistribution(grid, Require(doc, "distribution", "instance"));
  ValuationProfile vp = ParseValuation(grid, Require(doc, "valuation", "instance"));
  FeasibilitySystem feas = ParseFeasibility(n, Require(doc, "feasibility", "instance"));
  TieBreak tie;
  if (doc.contains("tie_break")) {
    try {
      tie = TieBreak(IntList(doc.at("tie_break"), "tie_break"));
    } catch (const DomainError& e) {
      throw SchemaError(std::string("tie_break: ") + e.what());
    }
  }
  return Instance(name, std::move(dist), std::move(vp), std::move(feas), std::move(tie));
}

}  // namespace

Instance ParseInstance(const json& doc, const std::string& default_name) {
  try {
    return ParseInstanceChecked(doc, default_name);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("instance: ") + e.what());
  }
}

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return ParseInstance(doc, std::filesystem::path(path).stem().string());
}

json InstanceToJson(const Instance& instance) {
  const SignalGrid& grid = instance.grid();
  const int n = instance.num_agents();
  json doc;
  doc["name"] = instance.name();
  doc["agents"] = n;
  json g = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (const auto& x : grid.points(i)) row.push_back(RationalJson(x));
    g.push_back(row);
  }
  doc["grid"] = g;

  const JointDistribution& dist = instance.dist();
  json d;
  d["arithmetic"] = dist.arithmetic() == Arithmetic::kRational ? "rational" : "double";
  if (dist.form() == DistributionForm::kProduct) {
    d["form"] = "product";
    json m = json::array();
    for (const auto& marginal : dist.marginal_weights()) {
      json row = json::array();
      for (const auto& p : marginal) row.push_back(RationalJson(p));
      m.push_back(row);
    }
    d["marginals"] = m;
  } else {
    d["form"] = "table";
    json entries = json::array();
    for (const auto& [profile, p] : dist.EnumerateSupport()) {
      json values = json::array();
      for (const auto& x : grid.Values(profile)) values.push_back(RationalJson(x));
      entries.push_back({{"profile", values}, {"p", RationalJson(p)}});
    }
    d["entries"] = entries;
  }
  doc["distribution"] = d;

  const ValuationProfile& vp = instance.vp();
  json v;
  v["family"] = FamilyName(vp.family());
  auto terms_json = [&](const AdditiveTerms& terms) {
    json out = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) {
        json steps = json::array();
        for (int k = 0; k < grid.size(j); ++k) {
          steps.push_back({RationalJson(grid.value(j, k)),
                           RationalJson(terms[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)])});
        }
        row.push_back(steps);
      }
      out.push_back(row);
    }
    return out;
  };
  switch (vp.family()) {
    case ValuationFamily::kPrivate:
      break;
    case ValuationFamily::kWeightedSum:
      v["beta"] = RationalJson(vp.beta());
      break;
    case ValuationFamily::kAdditive:
      v["g"] = terms_json(vp.additive_terms());
      break;
    case ValuationFamily::kConcaveAdditive: {
      v["g"] = terms_json(vp.additive_terms());
      json outer = json::array();
      for (const auto& pieces : vp.outer()) {
        json agent = json::array();
        for (const auto& p : pieces) agent.push_back({RationalJson(p.slope), RationalJson(p.intercept)});
        outer.push_back(agent);
      }
      v["outer"] = outer;
      break;
    }
    case ValuationFamily::kTable: {
      json values = json::array();
      for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
        json signals = json::array();
        for (const auto& x : grid.Values(grid.Unflatten(flat))) signals.push_back(RationalJson(x));
        json vs = json::array();
        for (int i = 0; i < n; ++i) vs.push_back(RationalJson(vp.Value(i, flat)));
        values.push_back({{"profile", signals}, {"v", vs}});
      }
      v["values"] = values;
      break;
    }
  }
  doc["valuation"] = v;

  const FeasibilitySystem& feas = instance.feas();
  json f;
  f["kind"] = KindName(feas.kind());
  switch (feas.kind()) {
    case FeasibilityKind::kUniform:
      f["k"] = feas.uniform_k();
      break;
    case FeasibilityKind::kPartition: {
      json blocks = json::array();
      for (ElementSet b : feas.blocks()) blocks.push_back(b.ToVector());
      f["blocks"] = blocks;
      f["capacities"] = feas.capacities();
      break;
    }
    case FeasibilityKind::kTransversal:
      f["adjacency"] = feas.adjacency();
      break;
    case FeasibilityKind::kGraphic: {
      json edges = json::array();
      for (const auto& [a, b] : feas.edges()) edges.push_back({a, b});
      f["edges"] = edges;
      break;
    }
    case FeasibilityKind::kExplicit: {
      json sets = json::array();
      for (ElementSet s : feas.explicit_sets()) sets.push_back(s.ToVector());
      f["sets"] = sets;
      break;
    }
  }
  doc["feasibility"] = f;
  if (instance.tie_break().is_explicit()) doc["tie_break"] = instance.tie_break().order();
  return doc;
}

void SaveInstance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write instance file '" + path + "'");
  out << InstanceToJson(instance).dump(2) << "\n";
}

}  // namespace ivlab
