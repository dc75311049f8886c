#include "csi/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "csi/error.hpp"
#include "csi/format.hpp"

namespace csi {

double TraitVector::utility() const {
  auto it = values.find(kUtilityTrait);
  if (it == values.end()) {
    throw Error(ErrorKind::Integrity, "trait vector lacks the mandatory 'utility' trait");
  }
  return it->second;
}

DiscriminationFunction::DiscriminationFunction(int dimension, std::vector<std::string> axes)
    : dimension_(dimension), axes_(std::move(axes)) {
  if (dimension_ < 1) {
    throw Error(ErrorKind::InvalidParameter, "discrimination dimension must be >= 1");
  }
  if (!axes_.empty() && static_cast<int>(axes_.size()) != dimension_) {
    throw Error(ErrorKind::InvalidParameter, "axis label count differs from dimension");
  }
}

void DiscriminationFunction::add_point(const std::string& id, const std::string& context,
                                       std::vector<double> v) {
  if (static_cast<int>(v.size()) != dimension_) {
    throw Error(ErrorKind::Validation,
                "vector for point '" + id + "' has " + std::to_string(v.size()) +
                    " components, expected " + std::to_string(dimension_));
  }
  for (double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorKind::Validation,
                  "vector for point '" + id + "' has component " + dtos(x) + " outside [0,1]");
    }
  }
  points_[id][context.empty() ? "*" : context] = std::move(v);
}

const std::vector<double>& DiscriminationFunction::eval(const std::string& id,
                                                        const std::string& context) const {
  auto it = points_.find(id);
  if (it == points_.end()) {
    throw Error(ErrorKind::Domain, "discrimination function has no point '" + id + "'");
  }
  const auto& by_context = it->second;
  if (!context.empty()) {
    auto c = by_context.find(context);
    if (c != by_context.end()) return c->second;
  }
  auto d = by_context.find("*");
  if (d != by_context.end()) return d->second;
  throw Error(ErrorKind::Domain, "point '" + id + "' has no entry for context '" +
                                     (context.empty() ? "*" : context) + "' and no default");
}

std::vector<double> evaluate_sd(const DiscriminationFunction& sd, const EvalPoint& point) {
  return sd.eval(point.id, point.context);
}

Scalarization Scalarization::uniform(int dimension) {
  if (dimension < 1) {
    throw Error(ErrorKind::InvalidParameter, "scalarization dimension must be >= 1");
  }
  Scalarization s;
  s.weights.assign(dimension, 1.0 / dimension);
  return s;
}

double scalarize(std::span<const double> v, const Scalarization& s) {
  if (v.empty()) throw Error(ErrorKind::InvalidParameter, "scalarize needs a nonempty vector");
  if (s.mode == ScalarMode::Max) {
    return *std::max_element(v.begin(), v.end());
  }
  if (v.size() != s.weights.size()) {
    throw Error(ErrorKind::InvalidParameter,
                "vector has " + std::to_string(v.size()) + " components but scalarization has " +
                    std::to_string(s.weights.size()) + " weights");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += s.weights[i] * v[i];
  return acc;
}

double pessimistic_cost(const KnowledgeMap& km, const std::string& point,
                        const Scalarization& s) {
  auto it = km.entries.find(point);
  if (it == km.entries.end()) {
    throw Error(ErrorKind::Domain, "knowledge map has no entry for point '" + point + "'");
  }
  return it->second.discrimination + s.lambda_u * it->second.uncertainty;
}

double social_utility(const SocialUniverse& u, const Society& soc) {
  std::unordered_map<std::string, const Agent*> by_id;
  by_id.reserve(u.agents.size());
  for (const Agent& a : u.agents) by_id.emplace(a.id, &a);

  double total = 0.0;
  for (const auto& member : soc.members) {
    auto it = by_id.find(member);
    if (it == by_id.end()) {
      throw Error(ErrorKind::Integrity,
                  "society '" + soc.id + "' references unknown agent '" + member + "'");
    }
    for (const auto& [trait, weight] : soc.trait_weights) {
      auto t = it->second->traits.values.find(trait);
      if (t == it->second->traits.values.end()) {
        throw Error(ErrorKind::Integrity, "agent '" + member + "' lacks trait '" + trait +
                                              "' weighted by society '" + soc.id + "'");
      }
      total += weight * t->second;
    }
  }
  return total;
}

std::vector<SocialPowerEntry> social_power_order(const SocialUniverse& u) {
  if (u.societies.empty()) {
    throw Error(ErrorKind::InvalidParameter, "universe declares no societies");
  }
  std::vector<SocialPowerEntry> out;
  out.reserve(u.societies.size());
  for (const Society& s : u.societies) {
    out.push_back({s.id, social_utility(u, s), false});
  }
  std::sort(out.begin(), out.end(), [](const SocialPowerEntry& a, const SocialPowerEntry& b) {
    return a.utility != b.utility ? a.utility > b.utility : a.society < b.society;
  });
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (out[i].utility == out[i + 1].utility) {
      out[i].tied = true;
      out[i + 1].tied = true;
    }
  }
  return out;
}

std::vector<std::string> validate_universe(const SocialUniverse& u) {
  std::vector<std::string> out;
  if (u.dimension < 1) out.push_back("dimension must be >= 1");
  if (u.sd.dimension() != u.dimension) {
    out.push_back("sd table dimension " + std::to_string(u.sd.dimension()) +
                  " differs from universe dimension " + std::to_string(u.dimension));
  }

  std::unordered_set<std::string> agent_ids;
  for (const Agent& a : u.agents) {
    if (a.id.empty()) out.push_back("agent with empty id");
    if (!agent_ids.insert(a.id).second) out.push_back("duplicate agent id '" + a.id + "'");
    if (!a.traits.has_utility()) {
      out.push_back("agent '" + a.id + "' lacks the mandatory 'utility' trait");
    }
    if (!a.sdp.empty() && !u.sdp_bank.count(a.sdp)) {
      out.push_back("agent '" + a.id + "' references unknown profile '" + a.sdp + "'");
    }
    if (a.pd && a.pd->dimension() != u.dimension) {
      out.push_back("agent '" + a.id + "' has a personal table of wrong dimension");
    }
  }

  std::unordered_set<std::string> society_ids;
  for (const Society& s : u.societies) {
    if (!society_ids.insert(s.id).second) out.push_back("duplicate society id '" + s.id + "'");
    if (s.members.empty()) out.push_back("society '" + s.id + "' has no members");
    for (const auto& m : s.members) {
      if (!agent_ids.count(m)) {
        out.push_back("society '" + s.id + "' references unknown agent '" + m + "'");
      }
    }
    double sum = 0.0;
    for (const auto& [trait, w] : s.trait_weights) {
      (void)trait;
      if (w < 0.0) out.push_back("society '" + s.id + "' has a negative trait weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      out.push_back("society '" + s.id + "' trait weights sum to " + dtos(sum) + ", expected 1");
    }
  }

  for (const auto& [name, profile] : u.sdp_bank) {
    if (static_cast<int>(profile.weights.size()) != u.dimension) {
      out.push_back("profile '" + name + "' has wrong dimension");
    }
    for (double x : profile.weights) {
      if (!(x >= 0.0 && x <= 1.0)) {
        out.push_back("profile '" + name + "' has component " + dtos(x) + " outside [0,1]");
        break;
      }
    }
  }

  for (const auto& [point, entry] : u.knowledge_map.entries) {
    if (!(entry.uncertainty >= 0.0 && entry.uncertainty <= 1.0) ||
        !(entry.discrimination >= 0.0 && entry.discrimination <= 1.0)) {
      out.push_back("knowledge entry '" + point + "' has U or D outside [0,1]");
    }
  }

  if (u.scalarization.mode == ScalarMode::WeightedSum) {
    if (static_cast<int>(u.scalarization.weights.size()) != u.dimension) {
      out.push_back("scalarization weight count differs from dimension");
    } else {
      double sum = 0.0;
      for (double w : u.scalarization.weights) {
        if (w < 0.0) out.push_back("scalarization has a negative weight");
        sum += w;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        out.push_back("scalarization weights sum to " + dtos(sum) + ", expected 1");
      }
    }
  }
  if (u.scalarization.lambda_u < 0.0) out.push_back("lambda_u must be >= 0");

  for (const auto& [id, coords] : u.embedding) {
    if (coords.empty()) out.push_back("embedding entry '" + id + "' is empty");
    if (!u.embedding.empty() && coords.size() != u.embedding.begin()->second.size()) {
      out.push_back("embedding entries have inconsistent dimensions");
      break;
    }
  }
  return out;
}

}  // namespace csi
