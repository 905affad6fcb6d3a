#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fuzzyroute {

/// Default sample count for discretized type reduction.
inline constexpr int kDefaultResolution = 201;

/// Closed real interval, used for variable universes.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// A rule (or membership) strength interval; always 0 <= lo <= hi <= 1.
struct FiringInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool is_zero() const { return hi <= 0.0; }
};

/// Meet of two antecedent strengths under min-t-norm (Mamdani AND).
FiringInterval fire_rule(FiringInterval g1, FiringInterval g2);

/// Trapezoidal membership function with breakpoints a <= b <= c <= d and
/// peak height in (0, 1]. Membership is 0 outside [a, d], `height` on
/// [b, c] and linear on the ramps.
struct Trapezoid {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double height = 1.0;

  Trapezoid() = default;
  Trapezoid(double a_, double b_, double c_, double d_, double height_ = 1.0);

  double membership(double x) const {
    if (x < a || x > d) return 0.0;
    if (x < b) return height * (x - a) / (b - a);
    if (x <= c) return height;
    return height * (d - x) / (d - c);
  }
};

/// Tunable encoding of one interval type-2 set: the upper trapezoid
/// breakpoints, the lower membership height and the symmetric support
/// inset that derives the lower trapezoid. This is the per-set slice of
/// a swarm particle.
struct SetParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double h_lmf = 0.9;
  double inset = 0.0;

  static constexpr int kCount = 6;

  bool operator==(const SetParams&) const = default;
};

/// A labeled interval type-2 fuzzy set: an upper and a lower trapezoid
/// bounding the footprint of uncertainty. Construction enforces
/// lmf(x) <= umf(x) for all x.
class IT2FuzzySet {
 public:
  IT2FuzzySet(std::string label, Trapezoid umf, Trapezoid lmf);

  /// Decodes the tunable parameter form. The lower trapezoid is the upper
  /// one with both support ends moved inward by `inset`; overlapping
  /// breakpoints are collapsed so the result is always a valid trapezoid
  /// contained in the upper one.
  static IT2FuzzySet from_params(std::string label, const SetParams& params);

  const std::string& label() const { return label_; }
  const Trapezoid& umf() const { return umf_; }
  const Trapezoid& lmf() const { return lmf_; }

  /// Generating parameters, present only for sets built via from_params.
  const std::optional<SetParams>& params() const { return params_; }

  /// [lmf(x), umf(x)]; no universe check (see LinguisticVariable).
  FiringInterval membership(double x) const {
    return {lmf_.membership(x), umf_.membership(x)};
  }

 private:
  std::string label_;
  Trapezoid umf_;
  Trapezoid lmf_;
  std::optional<SetParams> params_;
};

/// A named input or output quantity: a universe of discourse and an
/// ordered list of IT2 sets covering it. `higher_is_better` records which
/// end of the universe is the favorable one; default rule tables are
/// derived from it.
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, Interval universe,
                     std::vector<IT2FuzzySet> sets, bool higher_is_better = true);

  const std::string& name() const { return name_; }
  const Interval& universe() const { return universe_; }
  const std::vector<IT2FuzzySet>& sets() const { return sets_; }
  bool higher_is_better() const { return higher_is_better_; }

  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Membership interval of one set at x; throws std::domain_error naming
  /// the variable when x lies outside the universe.
  FiringInterval membership_interval(std::size_t set_index, double x) const;

  /// Membership intervals of every set at x, in set order.
  std::vector<FiringInterval> fuzzify(double x) const;

  /// Throws std::domain_error naming the variable when x is outside the
  /// universe.
  void check_universe(double x) const;

  /// Replaces one set from tunable parameters. Skips the coverage check:
  /// tuned variables may transiently leave gaps, which inference reports
  /// as NoRuleFired.
  void replace_set(std::size_t set_index, const SetParams& params);

 private:
  std::string name_;
  Interval universe_;
  std::vector<IT2FuzzySet> sets_;
  bool higher_is_better_ = true;
};

/// Thrown when every rule of a unit fires at zero strength.
class NoRuleFired : public std::runtime_error {
 public:
  explicit NoRuleFired(const std::string& unit)
      : std::runtime_error("no rule fired in unit '" + unit + "'") {}
};

struct Rule {
  std::string antecedent1;
  std::string antecedent2;
  std::string consequent;
};

struct TypeReduced {
  double left = 0.0;
  double right = 0.0;
};

/// Karnik-Mendel centroid type reduction of Mamdani-aggregated consequents.
/// Builds the aggregated output FOU on `resolution` evenly spaced samples
/// of `universe` (min-clip per consequent, max across consequents) and
/// returns the interval centroid [yl, yr].
TypeReduced km_type_reduce(
    std::span<const std::pair<const IT2FuzzySet*, FiringInterval>> fired,
    Interval universe, int resolution = kDefaultResolution);

/// Midpoint defuzzification of a type-reduced interval.
inline double defuzzify(double yl, double yr) { return 0.5 * (yl + yr); }

/// Reusable buffers for the inference hot path.
struct EvalScratch {
  std::vector<double> grid;
  std::vector<double> upper;
  std::vector<double> lower;
  std::vector<double> prefix[4];
  std::vector<FiringInterval> fired1;
  std::vector<FiringInterval> fired2;
  std::vector<FiringInterval> consequents;
};

/// One two-input / one-output Mamdani controller over IT2 sets.
/// The rule table is total: every antecedent label pair has exactly one
/// consequent. The output universe is the preference convention [0, 1].
class FuzzyLogicUnit {
 public:
  FuzzyLogicUnit(std::string name, LinguisticVariable input1,
                 LinguisticVariable input2, LinguisticVariable output,
                 std::vector<Rule> rules);

  const std::string& name() const { return name_; }
  const LinguisticVariable& input1() const { return input1_; }
  const LinguisticVariable& input2() const { return input2_; }
  const LinguisticVariable& output() const { return output_; }

  /// Consequent index for an antecedent set pair.
  std::size_t rule_consequent(std::size_t i1, std::size_t i2) const {
    return rule_table_[i1 * input2_.sets().size() + i2];
  }

  /// Fires every rule at (x1, x2) and aggregates same-consequent strengths
  /// elementwise by max. Returns one entry per output set, in set order
  /// (zero-strength entries included).
  std::vector<std::pair<std::size_t, FiringInterval>> infer(double x1,
                                                            double x2) const;

  /// Full pipeline: infer, type-reduce, defuzzify. Throws NoRuleFired when
  /// no rule has positive upper strength.
  double evaluate(double x1, double x2, int resolution = kDefaultResolution) const;
  double evaluate(double x1, double x2, int resolution, EvalScratch& scratch) const;

  /// Type-reduced interval before defuzzification.
  TypeReduced type_reduce(double x1, double x2,
                          int resolution = kDefaultResolution) const;

  /// Tuning hooks; see LinguisticVariable::replace_set.
  enum class VarSlot { kInput1, kInput2, kOutput };
  void replace_set(VarSlot slot, std::size_t set_index, const SetParams& params);

 private:
  void infer_into(double x1, double x2, EvalScratch& scratch) const;

  std::string name_;
  LinguisticVariable input1_;
  LinguisticVariable input2_;
  LinguisticVariable output_;
  std::vector<std::size_t> rule_table_;  // input1-major, values: output set index
};

}  // namespace fuzzyroute
