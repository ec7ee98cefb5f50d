#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "talentplan/milp_model.hpp"
#include "talentplan/nonlinear_model.hpp"
#include "talentplan/piecewise.hpp"

namespace talentplan::lin {

/// Binary digits of a bounded integer variable plus the rows that tie the
/// variable to its digits and cap it.
struct BitExpansion {
  int var = -1;
  long upper = 0;
  std::vector<int> bits;  // digit columns, least significant first
  int link_row = -1;      // var - sum 2^r bit_r = 0
  int cap_row = -1;       // var <= upper
};

/// Bookkeeping for one exact product w = x * b with b binary.
struct ProductBlock {
  int aux = -1;
  int x = -1, b = -1;
  double lo = 0.0, hi = 0.0;  // bounds of x used in the rows
};

/// Bookkeeping for one three-breakpoint product approximation of x * y.
struct PiecewiseBlock {
  int x = -1, y = -1;
  int mean = -1, half_diff = -1;  // (x+y)/2 and (x-y)/2
  int lambda[3] = {-1, -1, -1};
  int lambda_bar[3] = {-1, -1, -1};
  int seg[2] = {-1, -1};      // segment selectors for the mean square
  int seg_bar[2] = {-1, -1};  // segment selectors for the difference square
  int value = -1;             // approximated product, in [-1/4, 1]
};

/// Trace from every reformulated object back to its source, and the maps a
/// solution reader needs to recover plan variables.
struct ExpansionMap {
  int num_original = 0;                        // catalog variables come first
  std::map<int, BitExpansion> bits;            // by original integer column
  std::vector<ProductBlock> products;
  std::vector<PiecewiseBlock> piecewise;
  std::vector<std::array<int, 3>> abs_blocks;  // (gamma, positive, negative)
  std::map<std::pair<int, int>, int> product_aux;    // (x, b) -> aux column
  std::map<std::pair<int, int>, int> piecewise_value;  // (x, y) -> value column
};

/// Appends the binary expansion of an integer column: digits b_0..b_rbar with
/// rbar = floor(log2(upper + 1)), the linking equality and the cap row.
BitExpansion expand_integer(MilpModel& m, int var, long upper, const std::string& tag);

/// Appends gamma >= pos - neg and gamma >= neg - pos for gamma = |pos - neg|.
/// The caller must give gamma a nonpositive objective coefficient in a
/// maximization (equivalently nonnegative cost), which is what lets the
/// variable settle at the absolute value; passing negative costs is an error.
int linearize_abs(MilpModel& m, int pos, int neg, double upper, double cost_weight,
                  const std::string& tag);

/// Appends aux = x * b exactly for x in [lo, hi] and binary b:
///   aux <= hi b,  aux >= lo b,  aux <= x - lo (1 - b),  aux >= x - hi (1 - b).
ProductBlock linearize_binary_product(MilpModel& m, int x, double lo, double hi, int b,
                                      const std::string& tag);

/// Appends the three-breakpoint approximation of x * y for x, y in [0, 1];
/// the value column tracks piecewise_product_value(x, y) exactly.
PiecewiseBlock linearize_bilinear_continuous(MilpModel& m, int x, int y, const std::string& tag);

/// Transforms the symbolic model into a mixed integer linear program. The
/// stochastic restrictions are left as templates on the result; everything
/// else is finished rows. Throws when a product participant lacks finite
/// bounds.
std::pair<MilpModel, ExpansionMap> linearize_model(const model::NonlinearModel& nl,
                                                   const model::Bounds& bounds);

struct MilpDimensionReport {
  std::vector<std::pair<std::string, int>> variable_families;
  std::vector<std::pair<std::string, int>> constraint_families;
  int variables = 0;
  int constraints = 0;  // rows plus pending template rows, one per template
};

/// Same counting convention as the symbolic report: one row per (index,
/// sense); variable bounds are not rows; each pending stochastic template
/// counts as the single row it will instantiate in closed form.
MilpDimensionReport dimensions(const MilpModel& m);

}  // namespace talentplan::lin
