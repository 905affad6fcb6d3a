#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fuzzyroute/fuzzy.hpp"

namespace fuzzyroute {

/// The six leaf features a candidate edge is judged by.
struct CandidateFeatures {
  double density = 0.0;         // veh/m on the candidate edge
  double max_speed_norm = 0.0;  // edge limit / network maximum, in [0, 1]
  double familiarity = 0.0;     // driver familiarity, in [0, 1]
  double usual_speed = 0.0;     // m/s, in [0, 40]
  double departure_time = 0.0;  // hour of day, in [0, 24)
  double weather = 0.0;         // severity index, in [0, 1]

  double get(std::size_t leaf_index) const;
};

/// Canonical leaf feature names, in CandidateFeatures field order.
const std::array<std::string, 6>& leaf_feature_names();

/// Wiring source of one unit input: either a leaf feature or another
/// unit's output.
struct InputRef {
  enum class Kind { kFeature, kUnit } kind = Kind::kFeature;
  std::string name;

  static InputRef feature(std::string n) { return {Kind::kFeature, std::move(n)}; }
  static InputRef unit(std::string n) { return {Kind::kUnit, std::move(n)}; }
};

struct UnitSpec {
  std::string name;
  InputRef source1;
  InputRef source2;
  LinguisticVariable input1;
  LinguisticVariable input2;
  LinguisticVariable output;
  std::vector<Rule> rules;
};

/// Declarative wiring of FuzzyLogicUnits from the six leaf features down
/// to a single preference output.
struct HierarchySpec {
  std::vector<UnitSpec> units;
  std::string root;
};

/// Flattened membership-function parameters of one or more units together
/// with per-dimension box bounds. Layout: scoped units in evaluation
/// order; per unit input1, input2, output variables; per variable the sets
/// in order; per set (a, b, c, d, h_lmf, inset).
struct ParameterVector {
  std::vector<double> values;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return values.size(); }

  /// Clamp every dimension into its bounds and sort each set's four
  /// breakpoint dimensions ascending. Total: any vector becomes decodable.
  void repair();

  /// Same repair applied to a foreign value array with this vector's bounds.
  void repair(std::vector<double>& raw) const;

  void check_bounds() const;  // throws std::invalid_argument
};

/// An evaluable controller tree. Immutable in normal use; the tuner
/// mutates private working copies through apply_parameters_in_place.
class Hierarchy {
 public:
  /// Validates the spec (single root, acyclic wiring, every leaf feature
  /// consumed exactly once) and fixes the topological evaluation order.
  static Hierarchy build(HierarchySpec spec);

  const std::vector<std::string>& evaluation_order() const { return eval_order_; }
  const std::string& root() const { return spec_.root; }
  const HierarchySpec& spec() const { return spec_; }
  bool type1() const { return type1_; }
  int resolution() const { return resolution_; }
  void set_resolution(int r) { resolution_ = r; }

  const FuzzyLogicUnit& unit(const std::string& name) const;

  /// Crisp preference index of one candidate, in [0, 1]. Out-of-universe
  /// leaf features raise std::domain_error; units whose rules all fire at
  /// zero contribute the neutral output 0.5.
  double evaluate_preference(const CandidateFeatures& f) const;
  double evaluate_preference(const CandidateFeatures& f, EvalScratch& scratch) const;

  /// Crisp outputs of every unit for one feature vector, keyed by name.
  std::map<std::string, double> evaluate_all(const CandidateFeatures& f) const;

  /// Flattens the named units' set parameters. Every set in scope must be
  /// parameter-backed (built from SetParams).
  ParameterVector flatten_parameters(const std::vector<std::string>& scope) const;
  ParameterVector flatten_parameters() const;  // root unit only

  /// Returns a copy with the scoped sets rebuilt from `p`; `p` must carry
  /// bounds for the same scope and all values within bounds.
  Hierarchy apply_parameters(const ParameterVector& p,
                             const std::vector<std::string>& scope) const;
  Hierarchy apply_parameters(const ParameterVector& p) const;

  /// In-place variant for tuner-owned working copies.
  void apply_parameters_in_place(const ParameterVector& p,
                                 const std::vector<std::string>& scope);
  void apply_parameters_in_place(const ParameterVector& p);

  /// Zero-FOU variant: every lower membership function becomes its upper
  /// one. Idempotent; used by the type-1 strategies.
  Hierarchy degenerate_to_t1() const;

  /// Clamp features into the leaf input universes.
  CandidateFeatures clamp_features(const CandidateFeatures& f) const;

 private:
  Hierarchy() = default;

  struct Node {
    FuzzyLogicUnit unit;
    // Per input: leaf feature index (>= 0) or ~unit index via unit_input.
    int feature1 = -1, feature2 = -1;
    int unit1 = -1, unit2 = -1;
  };

  double evaluate_node(std::size_t node_index, const CandidateFeatures& f,
                       std::vector<double>& unit_out, EvalScratch& scratch) const;

  HierarchySpec spec_;
  std::vector<Node> nodes_;              // in evaluation order
  std::vector<std::string> eval_order_;  // unit names, same order
  std::map<std::string, std::size_t> index_;
  std::size_t root_index_ = 0;
  bool type1_ = false;
  int resolution_ = kDefaultResolution;
};

/// Three thirds-of-universe IT2 sets with the default 10%-of-support inset
/// and 0.9 lower height.
std::vector<IT2FuzzySet> default_three_sets(const std::array<std::string, 3>& labels,
                                            Interval universe);

/// Monotone default rule table over set favorability ranks: both best ->
/// last output label, both-poor pairs -> first, everything else in
/// between (out rank = floor of the mean antecedent rank).
std::vector<Rule> default_monotone_rules(const LinguisticVariable& in1,
                                         const LinguisticVariable& in2,
                                         const LinguisticVariable& out);

/// The published path rule base (density x speed phase labels).
std::vector<Rule> path_rules();

/// Default five-unit controller: Path(density, max_speed_norm),
/// Driver(familiarity, usual_speed), Environment(departure_time, weather),
/// PD(Path, Driver), PDE(PD, Environment). `jam_density` fixes the density
/// universe upper end.
HierarchySpec default_hierarchy_spec(double jam_density);

inline constexpr double kDefaultJamDensity = 2.0 / 15.0;  // one vehicle per 7.5 m

Hierarchy make_default_hierarchy(double jam_density = kDefaultJamDensity);

}  // namespace fuzzyroute
