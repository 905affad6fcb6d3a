#include "fuzzyroute/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fuzzyroute {

namespace {

std::string format_range(double lo, double hi) {
  std::ostringstream os;
  os << "[" << lo << ", " << hi << "]";
  return os.str();
}

}  // namespace

FiringInterval fire_rule(FiringInterval g1, FiringInterval g2) {
  return {std::min(g1.lo, g2.lo), std::min(g1.hi, g2.hi)};
}

Trapezoid::Trapezoid(double a_, double b_, double c_, double d_, double height_)
    : a(a_), b(b_), c(c_), d(d_), height(height_) {
  if (!(a <= b && b <= c && c <= d))
    throw std::invalid_argument("trapezoid breakpoints must satisfy a <= b <= c <= d");
  if (!(height > 0.0 && height <= 1.0))
    throw std::invalid_argument("trapezoid height must be in (0, 1]");
}

IT2FuzzySet::IT2FuzzySet(std::string label, Trapezoid umf, Trapezoid lmf)
    : label_(std::move(label)), umf_(umf), lmf_(lmf) {
  if (lmf_.height > umf_.height)
    throw std::invalid_argument("set '" + label_ + "': lmf height exceeds umf height");
  // Both functions are piecewise linear with breakpoints drawn from the
  // union of the two breakpoint lists, so checking containment at those
  // points covers every segment endpoint.
  const double probes[] = {umf_.a, umf_.b, umf_.c, umf_.d,
                           lmf_.a, lmf_.b, lmf_.c, lmf_.d};
  for (double x : probes) {
    if (lmf_.membership(x) > umf_.membership(x) + 1e-12)
      throw std::invalid_argument("set '" + label_ + "': lmf exceeds umf at x=" +
                                  std::to_string(x));
  }
}

IT2FuzzySet IT2FuzzySet::from_params(std::string label, const SetParams& p) {
  double a = p.a, b = p.b, c = p.c, d = p.d;
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  if (a > c) std::swap(a, c);
  if (b > d) std::swap(b, d);
  if (b > c) std::swap(b, c);

  const double inset = std::max(p.inset, 0.0);
  double la = a + inset;
  double lb = b + inset;
  double lc = c - inset;
  double ld = d - inset;
  if (lb > lc) lb = lc = 0.5 * (b + c);
  la = std::min(la, lb);
  ld = std::max(ld, lc);

  const double h = std::clamp(p.h_lmf, 1e-6, 1.0);
  IT2FuzzySet set(std::move(label), Trapezoid(a, b, c, d, 1.0),
                  Trapezoid(la, lb, lc, ld, h));
  set.params_ = SetParams{a, b, c, d, h, inset};
  return set;
}

LinguisticVariable::LinguisticVariable(std::string name, Interval universe,
                                       std::vector<IT2FuzzySet> sets,
                                       bool higher_is_better)
    : name_(std::move(name)),
      universe_(universe),
      sets_(std::move(sets)),
      higher_is_better_(higher_is_better) {
  if (!(universe_.lo < universe_.hi))
    throw std::invalid_argument("variable '" + name_ + "': empty universe");
  if (sets_.empty())
    throw std::invalid_argument("variable '" + name_ + "': no sets");
  for (const auto& s : sets_) {
    if (s.umf().a < universe_.lo - 1e-12 || s.umf().d > universe_.hi + 1e-12)
      throw std::invalid_argument("variable '" + name_ + "': set '" + s.label() +
                                  "' support outside universe " +
                                  format_range(universe_.lo, universe_.hi));
  }
  // The union of upper supports must cover the universe (no dead zones).
  std::vector<const IT2FuzzySet*> order;
  order.reserve(sets_.size());
  for (const auto& s : sets_) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [](const IT2FuzzySet* x, const IT2FuzzySet* y) { return x->umf().a < y->umf().a; });
  double covered = universe_.lo;
  for (const IT2FuzzySet* s : order) {
    if (s->umf().a > covered + 1e-9)
      throw std::invalid_argument("variable '" + name_ + "': coverage gap before set '" +
                                  s->label() + "'");
    covered = std::max(covered, s->umf().d);
  }
  if (covered < universe_.hi - 1e-9)
    throw std::invalid_argument("variable '" + name_ + "': coverage gap at universe end");
}

std::optional<std::size_t> LinguisticVariable::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (sets_[i].label() == label) return i;
  return std::nullopt;
}

void LinguisticVariable::check_universe(double x) const {
  if (!universe_.contains(x)) {
    std::ostringstream os;
    os << "variable '" << name_ << "': input " << x << " outside universe "
       << format_range(universe_.lo, universe_.hi);
    throw std::domain_error(os.str());
  }
}

FiringInterval LinguisticVariable::membership_interval(std::size_t set_index,
                                                       double x) const {
  check_universe(x);
  return sets_.at(set_index).membership(x);
}

std::vector<FiringInterval> LinguisticVariable::fuzzify(double x) const {
  check_universe(x);
  std::vector<FiringInterval> out(sets_.size());
  for (std::size_t i = 0; i < sets_.size(); ++i) out[i] = sets_[i].membership(x);
  return out;
}

void LinguisticVariable::replace_set(std::size_t set_index, const SetParams& params) {
  auto& slot = sets_.at(set_index);
  slot = IT2FuzzySet::from_params(slot.label(), params);
}

namespace {

// One Karnik-Mendel bound over a sampled FOU. Split position K in [0, n]
// assigns weight `first[j]` to samples j < K and `second[j]` to j >= K;
// for yl first = upper envelope (minimize), for yr first = lower
// (maximize). Iterating the split to its fixed point yields the bound; the
// exhaustive sweep below is the fallback for degenerate mass layouts where
// an intermediate split carries no weight.
double km_side(std::span<const double> grid, std::span<const double> first,
               std::span<const double> second, bool minimize,
               std::vector<double> prefix[4]) {
  const std::size_t n = grid.size();
  auto& fw = prefix[0];
  auto& fy = prefix[1];
  auto& sw = prefix[2];
  auto& sy = prefix[3];
  for (auto* v : {&fw, &fy, &sw, &sy}) v->assign(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    fw[j + 1] = fw[j] + first[j];
    fy[j + 1] = fy[j] + grid[j] * first[j];
    sw[j + 1] = sw[j] + second[j];
    sy[j + 1] = sy[j] + grid[j] * second[j];
  }
  auto centroid_at = [&](std::size_t split) -> std::optional<double> {
    const double num = fy[split] + (sy[n] - sy[split]);
    const double den = fw[split] + (sw[n] - sw[split]);
    if (den <= 0.0) return std::nullopt;
    return num / den;
  };
  auto split_for = [&](double y) {
    // Number of grid points <= y.
    auto it = std::upper_bound(grid.begin(), grid.end(), y);
    return static_cast<std::size_t>(std::distance(grid.begin(), it));
  };

  double num0 = 0.0, den0 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = 0.5 * (first[j] + second[j]);
    num0 += grid[j] * w;
    den0 += w;
  }
  std::size_t split = split_for(num0 / den0);
  for (std::size_t iter = 0; iter <= n + 1; ++iter) {
    auto c = centroid_at(split);
    if (!c) break;
    const std::size_t next = split_for(*c);
    if (next == split) return *c;
    split = next;
  }

  std::optional<double> best;
  for (std::size_t k = 0; k <= n; ++k) {
    auto c = centroid_at(k);
    if (!c) continue;
    if (!best || (minimize ? *c < *best : *c > *best)) best = c;
  }
  return *best;  // some split always carries the upper mass
}

TypeReduced km_reduce_sampled(std::span<const double> grid,
                              std::span<const double> upper,
                              std::span<const double> lower,
                              std::vector<double> prefix[4]) {
  const double yl = km_side(grid, upper, lower, /*minimize=*/true, prefix);
  const double yr = km_side(grid, lower, upper, /*minimize=*/false, prefix);
  return {std::min(yl, yr), std::max(yl, yr)};
}

}  // namespace

TypeReduced km_type_reduce(
    std::span<const std::pair<const IT2FuzzySet*, FiringInterval>> fired,
    Interval universe, int resolution) {
  if (resolution < 2) throw std::invalid_argument("km_type_reduce: resolution must be >= 2");
  bool any = false;
  for (const auto& [set, f] : fired)
    if (f.hi > 0.0) { any = true; break; }
  if (!any) throw NoRuleFired("<type reducer>");

  const std::size_t n = static_cast<std::size_t>(resolution);
  std::vector<double> grid(n), upper(n, 0.0), lower(n, 0.0);
  const double step = universe.width() / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double y = universe.lo + step * static_cast<double>(j);
    grid[j] = y;
    for (const auto& [set, f] : fired) {
      if (f.hi <= 0.0) continue;
      upper[j] = std::max(upper[j], std::min(f.hi, set->umf().membership(y)));
      lower[j] = std::max(lower[j], std::min(f.lo, set->lmf().membership(y)));
    }
  }
  std::vector<double> prefix[4];
  return km_reduce_sampled(grid, upper, lower, prefix);
}

FuzzyLogicUnit::FuzzyLogicUnit(std::string name, LinguisticVariable input1,
                               LinguisticVariable input2, LinguisticVariable output,
                               std::vector<Rule> rules)
    : name_(std::move(name)),
      input1_(std::move(input1)),
      input2_(std::move(input2)),
      output_(std::move(output)) {
  if (output_.universe().lo != 0.0 || output_.universe().hi != 1.0)
    throw std::invalid_argument("unit '" + name_ + "': output universe must be [0, 1]");
  const std::size_t n1 = input1_.sets().size();
  const std::size_t n2 = input2_.sets().size();
  rule_table_.assign(n1 * n2, SIZE_MAX);
  for (const auto& r : rules) {
    auto i1 = input1_.index_of(r.antecedent1);
    auto i2 = input2_.index_of(r.antecedent2);
    auto io = output_.index_of(r.consequent);
    if (!i1 || !i2 || !io)
      throw std::invalid_argument("unit '" + name_ + "': rule references unknown label (" +
                                  r.antecedent1 + ", " + r.antecedent2 + ") -> " +
                                  r.consequent);
    auto& slot = rule_table_[*i1 * n2 + *i2];
    if (slot != SIZE_MAX)
      throw std::invalid_argument("unit '" + name_ + "': duplicate rule for (" +
                                  r.antecedent1 + ", " + r.antecedent2 + ")");
    slot = *io;
  }
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2)
      if (rule_table_[i1 * n2 + i2] == SIZE_MAX)
        throw std::invalid_argument(
            "unit '" + name_ + "': rule table not total, missing (" +
            input1_.sets()[i1].label() + ", " + input2_.sets()[i2].label() + ")");
}

void FuzzyLogicUnit::infer_into(double x1, double x2, EvalScratch& s) const {
  const auto& sets1 = input1_.sets();
  const auto& sets2 = input2_.sets();
  input1_.check_universe(x1);
  input2_.check_universe(x2);
  s.fired1.resize(sets1.size());
  s.fired2.resize(sets2.size());
  for (std::size_t i = 0; i < sets1.size(); ++i) s.fired1[i] = sets1[i].membership(x1);
  for (std::size_t i = 0; i < sets2.size(); ++i) s.fired2[i] = sets2[i].membership(x2);
  s.consequents.assign(output_.sets().size(), FiringInterval{});
  for (std::size_t i1 = 0; i1 < sets1.size(); ++i1) {
    if (s.fired1[i1].hi <= 0.0) continue;  // min with zero fires nothing
    for (std::size_t i2 = 0; i2 < sets2.size(); ++i2) {
      const FiringInterval g = fire_rule(s.fired1[i1], s.fired2[i2]);
      auto& agg = s.consequents[rule_consequent(i1, i2)];
      agg.lo = std::max(agg.lo, g.lo);
      agg.hi = std::max(agg.hi, g.hi);
    }
  }
}

std::vector<std::pair<std::size_t, FiringInterval>> FuzzyLogicUnit::infer(
    double x1, double x2) const {
  EvalScratch s;
  infer_into(x1, x2, s);
  std::vector<std::pair<std::size_t, FiringInterval>> out;
  out.reserve(s.consequents.size());
  for (std::size_t i = 0; i < s.consequents.size(); ++i)
    out.emplace_back(i, s.consequents[i]);
  return out;
}

TypeReduced FuzzyLogicUnit::type_reduce(double x1, double x2, int resolution) const {
  EvalScratch s;
  infer_into(x1, x2, s);
  std::vector<std::pair<const IT2FuzzySet*, FiringInterval>> fired;
  fired.reserve(s.consequents.size());
  for (std::size_t i = 0; i < s.consequents.size(); ++i)
    fired.emplace_back(&output_.sets()[i], s.consequents[i]);
  try {
    return km_type_reduce(fired, output_.universe(), resolution);
  } catch (const NoRuleFired&) {
    throw NoRuleFired(name_);
  }
}

double FuzzyLogicUnit::evaluate(double x1, double x2, int resolution) const {
  EvalScratch s;
  return evaluate(x1, x2, resolution, s);
}

double FuzzyLogicUnit::evaluate(double x1, double x2, int resolution,
                                EvalScratch& s) const {
  if (resolution < 2) throw std::invalid_argument("evaluate: resolution must be >= 2");
  infer_into(x1, x2, s);
  bool any = false;
  for (const auto& f : s.consequents)
    if (f.hi > 0.0) { any = true; break; }
  if (!any) throw NoRuleFired(name_);

  const std::size_t n = static_cast<std::size_t>(resolution);
  const Interval universe = output_.universe();
  const double step = universe.width() / static_cast<double>(n - 1);
  s.grid.resize(n);
  s.upper.assign(n, 0.0);
  s.lower.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double y = universe.lo + step * static_cast<double>(j);
    s.grid[j] = y;
    for (std::size_t i = 0; i < s.consequents.size(); ++i) {
      const FiringInterval& f = s.consequents[i];
      if (f.hi <= 0.0) continue;
      const IT2FuzzySet& set = output_.sets()[i];
      s.upper[j] = std::max(s.upper[j], std::min(f.hi, set.umf().membership(y)));
      s.lower[j] = std::max(s.lower[j], std::min(f.lo, set.lmf().membership(y)));
    }
  }
  const TypeReduced r = km_reduce_sampled(s.grid, s.upper, s.lower, s.prefix);
  return defuzzify(r.left, r.right);
}

void FuzzyLogicUnit::replace_set(VarSlot slot, std::size_t set_index,
                                 const SetParams& params) {
  switch (slot) {
    case VarSlot::kInput1: input1_.replace_set(set_index, params); break;
    case VarSlot::kInput2: input2_.replace_set(set_index, params); break;
    case VarSlot::kOutput: output_.replace_set(set_index, params); break;
  }
}

}  // namespace fuzzyroute
