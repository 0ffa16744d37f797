#pragma once

// Three-party, two-setting, two-outcome Bell expressions evaluated with
// displaced-parity measurements on Gaussian states.
//
// Text format, one term per line (or ';'-separated):
//
//   # comment
//   <coefficient> <A0|A1|-> <B0|B1|-> <C0|C1|->
//   <coefficient> p(<abc>|<xyz>)        abc in {+,-}^3, xyz in {0,1}^3
//   bound <real>                          last entry
//
// '-' marks an absent party (marginal correlator). Probability terms are
// expanded into correlators on parsing.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "cvnl/gaussian.hpp"
#include "cvnl/optimizer.hpp"
#include "cvnl/svetlichny.hpp"

namespace cvnl {

enum class Selector : int { kSetting0 = 0, kSetting1 = 1, kAbsent = 2 };

using PartySelectors = std::array<Selector, 3>;

struct BellTerm {
  double coefficient = 0.0;
  PartySelectors parties{Selector::kAbsent, Selector::kAbsent, Selector::kAbsent};

  friend bool operator==(const BellTerm&, const BellTerm&) = default;
};

// sum_t coefficient_t * <term_t> <= bound.
struct BellExpression {
  std::string name;
  std::vector<BellTerm> terms;
  double bound = 0.0;
};

BellExpression parse_expression(std::string_view text, std::string name = "");
BellExpression load_expression(const std::string& path);
std::string write_expression(const BellExpression& e);

// The Svetlichny functional as a correlator expression with bound 4.
BellExpression svetlichny_expression();

// Resolves "svetlichny" to the built-in, anything else to a file path.
BellExpression resolve_expression(const std::string& name_or_path);

// Expectation values of products of displaced parities for all 26 nonempty
// party subsets and setting choices.
class CorrelatorTable {
 public:
  CorrelatorTable();

  double operator[](const PartySelectors& sel) const { return values_[index(sel)]; }
  void set(const PartySelectors& sel, double v);

  static std::size_t index(const PartySelectors& sel);

 private:
  // The all-absent slot holds the empty product, 1.
  std::array<double, 27> values_;
};

CorrelatorTable correlator_table(const CovarianceMatrix& cm, const MeasurementSettings& s);

// Outcome probabilities p(abc|xyz), indexed 4*a + 2*b + c with 0 for the +1
// outcome and 1 for -1.
using OutcomeDistribution = std::array<double, 8>;

OutcomeDistribution correlators_to_probabilities(const CorrelatorTable& t, int x, int y, int z);

// Full behaviour indexed by 4*x + 2*y + z.
using Behaviour = std::array<OutcomeDistribution, 8>;

Behaviour behaviour(const CorrelatorTable& t);

// Inverse of `behaviour` for non-signalling data; marginals are read at the
// 0 setting of the summed-out parties.
CorrelatorTable probabilities_to_correlators(const Behaviour& p);

double evaluate(const BellExpression& e, const CorrelatorTable& t);
double evaluate(const BellExpression& e, const CovarianceMatrix& cm, const MeasurementSettings& s);

// Maximizes |evaluate| over all twelve setting coordinates. A search over the
// momentum-antisymmetric family seeds the full search.
MaximizationResult maximize_expression(const BellExpression& e, const CovarianceMatrix& cm,
                                       const OptimizerOptions& opts = {});

}  // namespace cvnl
