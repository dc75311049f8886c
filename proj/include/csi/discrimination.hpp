#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csi {

// Trait table for one agent. The "utility" trait is mandatory; everything
// else is free-form.
struct TraitVector {
  std::map<std::string, double> values;

  static constexpr const char* kUtilityTrait = "utility";

  bool has_utility() const { return values.count(kUtilityTrait) > 0; }
  double utility() const;
};

// Per-role weighting of the discrimination axes, components in [0,1].
struct SdProfile {
  std::vector<double> weights;
};

struct EvalPoint {
  std::string id;
  std::string context;  // empty selects the default entry
};

// Table-driven map from evaluation points to vectors in [0,1]^n. A point may
// carry per-context vectors; context "*" is the default entry used when the
// requested context is absent. A point with neither is a domain error —
// never a silent zero.
class DiscriminationFunction {
 public:
  DiscriminationFunction() = default;
  explicit DiscriminationFunction(int dimension, std::vector<std::string> axes = {});

  int dimension() const { return dimension_; }
  const std::vector<std::string>& axes() const { return axes_; }
  const std::map<std::string, std::map<std::string, std::vector<double>>>& points() const {
    return points_;
  }

  // Validates dimension and [0,1] range.
  void add_point(const std::string& id, const std::string& context, std::vector<double> v);
  bool has_point(const std::string& id) const { return points_.count(id) > 0; }
  const std::vector<double>& eval(const std::string& id, const std::string& context = "") const;

 private:
  int dimension_ = 1;
  std::vector<std::string> axes_;
  std::map<std::string, std::map<std::string, std::vector<double>>> points_;
};

struct Agent {
  std::string id;
  TraitVector traits;
  std::string sdp;  // name in the universe's profile bank; empty = none
  std::optional<DiscriminationFunction> pd;  // agent-local view, informational
};

struct Society {
  std::string id;
  std::vector<std::string> members;
  std::map<std::string, double> trait_weights;  // sums to 1
};

struct KmEntry {
  double uncertainty = 0.0;     // U in [0,1]
  double discrimination = 0.0;  // D in [0,1]
};

// Partial knowledge table keyed by evaluation point (edges use "from->to").
struct KnowledgeMap {
  std::map<std::string, KmEntry> entries;
};

enum class ScalarMode { WeightedSum, Max };

// Reduction from a discrimination vector to one cost, plus the uncertainty
// penalty coefficient applied under partial knowledge.
struct Scalarization {
  ScalarMode mode = ScalarMode::WeightedSum;
  std::vector<double> weights;  // weighted-sum mode: nonnegative, sums to 1
  double lambda_u = 1.0;        // >= 0

  static Scalarization uniform(int dimension);
};

struct SocialUniverse {
  int dimension = 1;
  std::vector<Agent> agents;
  std::vector<Society> societies;
  DiscriminationFunction sd;
  std::map<std::string, SdProfile> sdp_bank;
  KnowledgeMap knowledge_map;
  Scalarization scalarization;
  // Optional continuous placement of points; enables coordinate descent in
  // the one-stage pipeline.
  std::map<std::string, std::vector<double>> embedding;
};

std::vector<double> evaluate_sd(const DiscriminationFunction& sd, const EvalPoint& point);
double scalarize(std::span<const double> v, const Scalarization& s);

// discrimination + lambda_u * uncertainty for a known point; unknown point
// is a domain error.
double pessimistic_cost(const KnowledgeMap& km, const std::string& point,
                        const Scalarization& s);

// Sum over members of the society's trait-weighted values.
double social_utility(const SocialUniverse& u, const Society& soc);

struct SocialPowerEntry {
  std::string society;
  double utility = 0.0;
  bool tied = false;
};

// Societies by descending social utility, ties flagged and ordered by id.
std::vector<SocialPowerEntry> social_power_order(const SocialUniverse& u);

// Cross-reference and range checks; empty result means consistent.
std::vector<std::string> validate_universe(const SocialUniverse& u);

}  // namespace csi
