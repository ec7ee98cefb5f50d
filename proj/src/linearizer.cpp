#include "talentplan/linearizer.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace talentplan::lin {

namespace {

void set_entries(MilpRow& row, const std::map<int, double>& acc) {
  row.entries.reserve(acc.size());
  for (const auto& [col, coef] : acc)
    if (coef != 0.0) row.entries.push_back({col, coef});
}

}  // namespace

namespace {

// Bucketing prefix of a provenance string: everything before the first ':'.
std::string family_of(const MilpModel& m, int col) {
  const std::string& p = m.vars[static_cast<std::size_t>(col)].provenance;
  const auto colon = p.find(':');
  return colon == std::string::npos ? p : p.substr(0, colon);
}

}  // namespace

BitExpansion expand_integer(MilpModel& m, int var, long upper, const std::string& tag) {
  if (upper < 0) throw std::invalid_argument("expand_integer: negative upper bound");
  BitExpansion e;
  e.var = var;
  e.upper = upper;
  const std::string fam = "bit(" + family_of(m, var) + ")";
  const int rbar = static_cast<int>(std::floor(std::log2(static_cast<double>(upper) + 1.0)));
  for (int r = 0; r <= rbar; ++r) {
    std::ostringstream name;
    name << "B" << m.cols();
    e.bits.push_back(m.add_var(name.str(), model::VarKind::Binary, 0.0, 1.0,
                               fam + ":" + m.vars[static_cast<std::size_t>(var)].name));
  }
  auto& link = m.add_row(m.vars[static_cast<std::size_t>(var)].name + ".def", 0.0, 0.0,
                         "bit_link:" + tag);
  std::map<int, double> acc;
  acc[var] += 1.0;
  for (int r = 0; r <= rbar; ++r) acc[e.bits[static_cast<std::size_t>(r)]] -= std::pow(2.0, r);
  set_entries(link, acc);
  e.link_row = m.num_rows() - 1;

  auto& cap = m.add_row(m.vars[static_cast<std::size_t>(var)].name + ".cap", -kInf,
                        static_cast<double>(upper), "bit_cap:" + tag);
  cap.entries.push_back({var, 1.0});
  e.cap_row = m.num_rows() - 1;
  return e;
}

int linearize_abs(MilpModel& m, int pos, int neg, double upper, double cost_weight,
                  const std::string& tag) {
  if (cost_weight < 0.0)
    throw std::invalid_argument(
        "linearize_abs: the absolute-value variable would carry a negative cost and could not "
        "settle at |" +
        m.vars[static_cast<std::size_t>(pos)].name + " - " +
        m.vars[static_cast<std::size_t>(neg)].name + "|");
  std::ostringstream name;
  name << "GAM" << m.cols();
  const int gamma = m.add_var(name.str(), model::VarKind::Integer, 0.0, upper, "abs:" + tag);
  auto& lo = m.add_row(name.str() + ".lo", -kInf, 0.0, "abs_lo:" + tag);
  lo.entries = {{pos, 1.0}, {neg, -1.0}, {gamma, -1.0}};
  auto& hi = m.add_row(name.str() + ".hi", -kInf, 0.0, "abs_hi:" + tag);
  hi.entries = {{neg, 1.0}, {pos, -1.0}, {gamma, -1.0}};
  return gamma;
}

ProductBlock linearize_binary_product(MilpModel& m, int x, double lo, double hi, int b,
                                      const std::string& tag) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("linearize_binary_product: unbounded continuous factor in " + tag);
  ProductBlock blk;
  blk.x = x;
  blk.b = b;
  blk.lo = lo;
  blk.hi = hi;
  const std::string fam = "w{" + family_of(m, x) + "." + family_of(m, b) + "}";
  std::ostringstream name;
  name << "W" << m.cols();
  blk.aux = m.add_var(name.str(), model::VarKind::Continuous, std::min(lo, 0.0),
                      std::max(hi, 0.0), fam + ":" + tag);
  auto filtered = [](std::initializer_list<RowEntry> entries) {
    std::vector<RowEntry> out;
    for (const auto& e : entries)
      if (e.coef != 0.0) out.push_back(e);
    return out;
  };
  // aux <= hi b
  auto& r1 = m.add_row(name.str() + ".ub", -kInf, 0.0, fam + "_rows:" + tag);
  r1.entries = filtered({{blk.aux, 1.0}, {b, -hi}});
  // aux >= lo b
  auto& r2 = m.add_row(name.str() + ".lb", -kInf, 0.0, fam + "_rows:" + tag);
  r2.entries = filtered({{b, lo}, {blk.aux, -1.0}});
  // aux <= x - lo (1 - b)  <=>  aux - x - lo b <= -lo
  auto& r3 = m.add_row(name.str() + ".on_ub", -kInf, -lo, fam + "_rows:" + tag);
  r3.entries = filtered({{blk.aux, 1.0}, {x, -1.0}, {b, -lo}});
  // aux >= x - hi (1 - b)  <=>  x + hi b - aux <= hi
  auto& r4 = m.add_row(name.str() + ".on_lb", -kInf, hi, fam + "_rows:" + tag);
  r4.entries = filtered({{x, 1.0}, {b, hi}, {blk.aux, -1.0}});
  return blk;
}

PiecewiseBlock linearize_bilinear_continuous(MilpModel& m, int x, int y, const std::string& tag) {
  for (int col : {x, y}) {
    const auto& v = m.vars[static_cast<std::size_t>(col)];
    if (v.lb < -1e-12 || v.ub > 1.0 + 1e-12)
      throw std::invalid_argument("linearize_bilinear_continuous: factor " + v.name +
                                  " must lie in [0,1]");
  }
  PiecewiseBlock blk;
  blk.x = x;
  blk.y = y;
  const int base = m.cols();
  std::ostringstream mean_name, diff_name;
  mean_name << "PM" << base;
  diff_name << "PD" << base;
  blk.mean = m.add_var(mean_name.str(), model::VarKind::Continuous, 0.0, 1.0, "pw_mean:" + tag);
  blk.half_diff =
      m.add_var(diff_name.str(), model::VarKind::Continuous, -0.5, 0.5, "pw_diff:" + tag);
  for (int k = 0; k < 3; ++k) {
    blk.lambda[k] = m.add_var("PL" + std::to_string(m.cols()), model::VarKind::Continuous, 0.0,
                              1.0, "pw_lambda:" + tag);
  }
  for (int k = 0; k < 3; ++k) {
    blk.lambda_bar[k] = m.add_var("PK" + std::to_string(m.cols()), model::VarKind::Continuous,
                                  0.0, 1.0, "pw_lambda_bar:" + tag);
  }
  for (int k = 0; k < 2; ++k) {
    blk.seg[k] = m.add_var("PS" + std::to_string(m.cols()), model::VarKind::Binary, 0.0, 1.0,
                           "pw_segment:" + tag);
  }
  for (int k = 0; k < 2; ++k) {
    blk.seg_bar[k] = m.add_var("PT" + std::to_string(m.cols()), model::VarKind::Binary, 0.0, 1.0,
                               "pw_segment_bar:" + tag);
  }
  blk.value =
      m.add_var("PV" + std::to_string(m.cols()), model::VarKind::Continuous, -0.25, 1.0,
                "pw_value:" + tag);

  auto row = [&](const char* suffix, double lo, double hi,
                 std::initializer_list<RowEntry> entries, const char* rule) -> MilpRow& {
    auto& r = m.add_row(mean_name.str() + suffix, lo, hi, std::string(rule) + ":" + tag);
    r.entries = entries;
    return r;
  };

  // mean and half-difference definitions
  row(".m", 0.0, 0.0, {{blk.mean, 1.0}, {x, -0.5}, {y, -0.5}}, "pw_mean_def");
  row(".d", 0.0, 0.0, {{blk.half_diff, 1.0}, {x, -0.5}, {y, 0.5}}, "pw_diff_def");
  // convex-combination representation over breakpoints {0, 1/2, 1}
  row(".i", 0.0, 0.0, {{blk.mean, 1.0}, {blk.lambda[1], -0.5}, {blk.lambda[2], -1.0}},
      "pw_interp");
  row(".c", 1.0, 1.0, {{blk.lambda[0], 1.0}, {blk.lambda[1], 1.0}, {blk.lambda[2], 1.0}},
      "pw_convex");
  row(".s", 1.0, 1.0, {{blk.seg[0], 1.0}, {blk.seg[1], 1.0}}, "pw_segments");
  row(".a0", -kInf, 0.0, {{blk.lambda[0], 1.0}, {blk.seg[0], -1.0}}, "pw_adjacency");
  row(".a1", -kInf, 0.0, {{blk.lambda[1], 1.0}, {blk.seg[0], -1.0}, {blk.seg[1], -1.0}},
      "pw_adjacency");
  row(".a2", -kInf, 0.0, {{blk.lambda[2], 1.0}, {blk.seg[1], -1.0}}, "pw_adjacency");
  // breakpoints {-1/2, 0, 1/2} for the half-difference square
  row(".ib", 0.0, 0.0,
      {{blk.half_diff, 1.0}, {blk.lambda_bar[0], 0.5}, {blk.lambda_bar[2], -0.5}},
      "pw_interp_bar");
  row(".cb", 1.0, 1.0,
      {{blk.lambda_bar[0], 1.0}, {blk.lambda_bar[1], 1.0}, {blk.lambda_bar[2], 1.0}},
      "pw_convex_bar");
  row(".sb", 1.0, 1.0, {{blk.seg_bar[0], 1.0}, {blk.seg_bar[1], 1.0}}, "pw_segments_bar");
  row(".b0", -kInf, 0.0, {{blk.lambda_bar[0], 1.0}, {blk.seg_bar[0], -1.0}}, "pw_adjacency_bar");
  row(".b1", -kInf, 0.0,
      {{blk.lambda_bar[1], 1.0}, {blk.seg_bar[0], -1.0}, {blk.seg_bar[1], -1.0}},
      "pw_adjacency_bar");
  row(".b2", -kInf, 0.0, {{blk.lambda_bar[2], 1.0}, {blk.seg_bar[1], -1.0}}, "pw_adjacency_bar");
  // value = 0.25 l1 + l2 - 0.25 lb0 - 0.25 lb2
  row(".v", 0.0, 0.0,
      {{blk.value, 1.0},
       {blk.lambda[1], -0.25},
       {blk.lambda[2], -1.0},
       {blk.lambda_bar[0], 0.25},
       {blk.lambda_bar[2], 0.25}},
      "pw_value_def");
  // The three-breakpoint value never exceeds either factor and never goes
  // negative on the unit box (the mean always dominates the half-difference):
  // valid at every segment-consistent point and much tighter than the
  // adjacency relaxation alone.
  row(".vx", -kInf, 0.0, {{blk.value, 1.0}, {x, -1.0}}, "pw_value_cap");
  row(".vy", -kInf, 0.0, {{blk.value, 1.0}, {y, -1.0}}, "pw_value_cap");
  row(".vf", -kInf, 0.0, {{blk.value, -1.0}}, "pw_value_floor");
  return blk;
}

namespace {

class Linearizer {
 public:
  Linearizer(const model::NonlinearModel& nl, const model::Bounds& bounds)
      : nl_(nl), bounds_(bounds) {}

  std::pair<MilpModel, ExpansionMap> run() {
    copy_catalog();
    map_.num_original = nl_.catalog.size();
    objective_mismatch();
    objective_terms();
    constraints();
    tie_product_families();
    (void)bounds_;
    return {std::move(m_), std::move(map_)};
  }

  // A product approximation times a digit never exceeds either factor times
  // the same digit; relates the acceptance auxiliaries to the interview and
  // offer auxiliaries sharing that digit.
  void tie_product_families() {
    for (const auto& blk : map_.piecewise) {
      for (const auto& [key, value_aux] : map_.product_aux) {
        if (key.first != blk.value) continue;
        const int bit = key.second;
        for (int factor : {blk.x, blk.y}) {
          const auto it = map_.product_aux.find(std::make_pair(factor, bit));
          if (it == map_.product_aux.end()) continue;
          auto& row = m_.add_row(
              "tie" + std::to_string(value_aux) + "_" + std::to_string(it->second), -kInf, 0.0,
              "pw_tie:" + m_.vars[static_cast<std::size_t>(value_aux)].name);
          row.entries = {{value_aux, 1.0}, {it->second, -1.0}};
        }
      }
    }
  }

 private:
  const model::VarInfo& info(int col) const {
    return nl_.catalog.vars[static_cast<std::size_t>(col)];
  }

  bool fixed(int col) const {
    const auto& v = m_.vars[static_cast<std::size_t>(col)];
    return v.lb == v.ub;
  }

  void copy_catalog() {
    for (const auto& v : nl_.catalog.vars) {
      model::VarKind kind = v.kind;
      m_.add_var(v.name, kind, v.lb, v.ub, v.family);
    }
  }

  const BitExpansion& bits_of(int col) {
    auto it = map_.bits.find(col);
    if (it != map_.bits.end()) return it->second;
    const auto& v = m_.vars[static_cast<std::size_t>(col)];
    if (v.kind != model::VarKind::Integer)
      throw std::logic_error("bits_of: " + v.name + " is not an integer variable");
    if (!std::isfinite(v.ub))
      throw std::invalid_argument("bits_of: missing upper bound for " + v.name);
    auto exp = expand_integer(m_, col, static_cast<long>(std::llround(v.ub)), v.name);
    return map_.bits.emplace(col, std::move(exp)).first->second;
  }

  int product_with_binary(int x, int b) {
    const auto key = std::make_pair(x, b);
    auto it = map_.product_aux.find(key);
    if (it != map_.product_aux.end()) return it->second;
    const auto& xv = m_.vars[static_cast<std::size_t>(x)];
    auto blk = linearize_binary_product(m_, x, xv.lb, xv.ub, b,
                                        xv.name + "*" + m_.vars[static_cast<std::size_t>(b)].name);
    map_.products.push_back(blk);
    map_.product_aux.emplace(key, blk.aux);
    return blk.aux;
  }

  int piecewise_value(int x, int y) {
    const auto key = std::minmax(x, y);
    auto it = map_.piecewise_value.find(key);
    if (it != map_.piecewise_value.end()) return it->second;
    auto blk = linearize_bilinear_continuous(
        m_, key.first, key.second,
        m_.vars[static_cast<std::size_t>(key.first)].name + "*" +
            m_.vars[static_cast<std::size_t>(key.second)].name);
    map_.piecewise.push_back(blk);
    map_.piecewise_value.emplace(key, blk.value);
    // The declared range keeps the -1/4 lower bound of the product blocks,
    // but every feasible value is nonnegative; envelopes may use that.
    valid_lb_[blk.value] = 0.0;
    return blk.value;
  }

  // Reduces coef * product(vars) to linear entries, creating auxiliaries as
  // needed. Fixed variables fold into the coefficient first.
  void reduce(double coef, std::vector<int> vars, std::map<int, double>& acc, double& constant) {
    for (std::size_t k = 0; k < vars.size();) {
      if (vars.size() > 1 && fixed(vars[k])) {
        coef *= m_.vars[static_cast<std::size_t>(vars[k])].lb;
        vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        ++k;
      }
    }
    if (coef == 0.0) return;
    switch (vars.size()) {
      case 0:
        constant += coef;
        return;
      case 1:
        acc[vars[0]] += coef;
        return;
      case 2:
        reduce_pair(coef, vars[0], vars[1], acc);
        return;
      case 3:
        reduce_triple(coef, vars[0], vars[1], vars[2], acc);
        return;
      default:
        throw std::logic_error("reduce: unsupported product degree");
    }
  }

  // Product of a bounded integer and a bounded continuous variable through
  // the digit expansion, plus (once per pair) the aggregate envelope rows
  // that the per-digit blocks do not imply.
  void expand_int_times_cont(double coef, int integer, int cont, std::map<int, double>& acc) {
    const auto& bits = bits_of(integer);
    for (std::size_t r = 0; r < bits.bits.size(); ++r)
      acc[product_with_binary(cont, bits.bits[r])] += coef * std::pow(2.0, static_cast<int>(r));
    const auto key = std::make_pair(integer, cont);
    if (!envelope_done_.insert(key).second) return;

    const auto& iv = m_.vars[static_cast<std::size_t>(integer)];
    const auto& cv = m_.vars[static_cast<std::size_t>(cont)];
    if (iv.lb != 0.0) return;  // envelopes below assume a zero lower bound
    const double cap = iv.ub, hi = cv.ub;
    double lo = cv.lb;
    if (const auto vl = valid_lb_.find(cont); vl != valid_lb_.end())
      lo = std::max(lo, vl->second);
    const std::string tag = iv.name + "*" + cv.name;
    // product <= cap * x + lo * u - cap * lo
    auto& upper = m_.add_row("env_u:" + tag, -kInf, -cap * lo, "envelope:" + tag);
    for (std::size_t r = 0; r < bits.bits.size(); ++r)
      upper.entries.push_back(
          {product_with_binary(cont, bits.bits[r]), std::pow(2.0, static_cast<int>(r))});
    upper.entries.push_back({cont, -cap});
    if (lo != 0.0) upper.entries.push_back({integer, -lo});
    // product >= cap * x + hi * u - cap * hi
    auto& lower = m_.add_row("env_l:" + tag, -kInf, cap * hi, "envelope:" + tag);
    lower.entries.push_back({cont, cap});
    lower.entries.push_back({integer, hi});
    for (std::size_t r = 0; r < bits.bits.size(); ++r)
      lower.entries.push_back(
          {product_with_binary(cont, bits.bits[r]), -std::pow(2.0, static_cast<int>(r))});
  }

  void reduce_pair(double coef, int u, int v, std::map<int, double>& acc) {
    const auto ku = m_.vars[static_cast<std::size_t>(u)].kind;
    const auto kv = m_.vars[static_cast<std::size_t>(v)].kind;
    using model::VarKind;
    if (kv == VarKind::Binary) {
      acc[product_with_binary(u, v)] += coef;
      return;
    }
    if (ku == VarKind::Binary) {
      acc[product_with_binary(v, u)] += coef;
      return;
    }
    if (ku == VarKind::Integer && kv == VarKind::Continuous) {
      expand_int_times_cont(coef, u, v, acc);
      return;
    }
    if (kv == VarKind::Integer && ku == VarKind::Continuous) {
      expand_int_times_cont(coef, v, u, acc);
      return;
    }
    if (ku == VarKind::Continuous && kv == VarKind::Continuous) {
      acc[piecewise_value(u, v)] += coef;
      return;
    }
    throw std::logic_error("reduce_pair: integer-integer products are not used by this model");
  }

  void reduce_triple(double coef, int u, int v, int w, std::map<int, double>& acc) {
    using model::VarKind;
    int integer = -1;
    std::vector<int> cont;
    for (int col : {u, v, w}) {
      const auto kind = m_.vars[static_cast<std::size_t>(col)].kind;
      if (kind == VarKind::Integer) {
        if (integer >= 0) throw std::logic_error("reduce_triple: expected one integer factor");
        integer = col;
      } else if (kind == VarKind::Continuous) {
        cont.push_back(col);
      } else {
        throw std::logic_error("reduce_triple: unsupported factor kind");
      }
    }
    if (integer < 0 || cont.size() != 2)
      throw std::logic_error("reduce_triple: expected integer * continuous * continuous");
    const int value = piecewise_value(cont[0], cont[1]);
    expand_int_times_cont(coef, integer, value, acc);
  }

  std::vector<RowEntry> reduce_stochastic_group(const std::vector<model::Term>& terms,
                                                double sign) {
    std::map<int, double> acc;
    double constant = 0.0;
    for (const auto& t : terms) {
      std::vector<int> vars;
      for (int v : {t.v1, t.v2, t.v3})
        if (v >= 0) vars.push_back(v);
      reduce(sign * t.coef, std::move(vars), acc, constant);
    }
    if (constant != 0.0)
      throw std::logic_error("stochastic group reduced to a constant contribution");
    std::vector<RowEntry> out;
    for (const auto& [col, coef] : acc)
      if (coef != 0.0) out.push_back({col, coef});
    return out;
  }

  void objective_mismatch() {
    const double scale = nl_.objective_scale;
    for (const auto& mc : nl_.objective_mismatch) {
      if (mc.excess_cost < 0.0 || mc.shortage_cost < 0.0)
        throw std::invalid_argument("objective mismatch costs must be nonnegative");
      const double upper = m_.vars[static_cast<std::size_t>(mc.h)].ub;
      std::ostringstream tag;
      tag << "mismatch[j=" << mc.job << ",t=" << mc.period << "]";
      const int gamma = linearize_abs(m_, mc.h, mc.z, upper, mc.excess_cost, tag.str());
      map_.abs_blocks.push_back({gamma, mc.h, mc.z});
      const int gamma_bar = product_with_binary(gamma, mc.p);
      m_.add_objective(gamma, -scale * mc.excess_cost);
      m_.add_objective(gamma_bar, -scale * (mc.shortage_cost - mc.excess_cost));
    }
  }

  void objective_terms() {
    const double scale = nl_.objective_scale;
    std::map<int, double> acc;
    double constant = nl_.objective.constant;
    for (const auto& t : nl_.objective.terms) {
      if (t.stoch.param != model::StochRef::Param::None)
        throw std::logic_error("objective terms must be deterministic");
      std::vector<int> vars;
      for (int v : {t.v1, t.v2, t.v3})
        if (v >= 0) vars.push_back(v);
      reduce(t.coef, std::move(vars), acc, constant);
    }
    for (const auto& [col, coef] : acc) m_.add_objective(col, scale * coef);
    m_.objective_constant += scale * constant;
  }

  void emit_plain(const model::Expr& e, model::Sense sense, double rhs, const std::string& name,
                  const std::string& provenance) {
    std::map<int, double> acc;
    double constant = 0.0;
    for (const auto& t : e.terms) {
      std::vector<int> vars;
      for (int v : {t.v1, t.v2, t.v3})
        if (v >= 0) vars.push_back(v);
      reduce(t.coef, std::move(vars), acc, constant);
    }
    constant += e.constant;
    const double b = rhs - constant;
    double lo = -kInf, hi = kInf;
    switch (sense) {
      case model::Sense::LE:
        hi = b;
        break;
      case model::Sense::GE:
        lo = b;
        break;
      case model::Sense::EQ:
        lo = hi = b;
        break;
    }
    auto& row = m_.add_row(name, lo, hi, provenance);
    set_entries(row, acc);
  }

  void constraints() {
    for (const auto& c : nl_.constraints) {
      const std::string provenance = "family " + std::to_string(c.family);
      if (c.stochastic) {
        if (c.family == 12)
          time_template(c);
        else if (c.family == 17)
          accept_template(c);
        else
          throw std::logic_error("unexpected stochastic constraint family");
        continue;
      }
      if (c.kind == model::ConstraintKind::MaxOfTwoLeq) {
        emit_plain(c.lhs, model::Sense::LE, c.rhs, c.label + "/a", provenance);
        emit_plain(c.lhs_alt, model::Sense::LE, c.rhs, c.label + "/b", provenance);
      } else {
        emit_plain(c.lhs, c.sense, c.rhs, c.label, provenance);
      }
    }
  }

  void time_template(const model::Constraint& c) {
    TimeTemplate tpl;
    tpl.budget = c.rhs;
    const int jobs = nl_.catalog.jobs;
    tpl.doc_terms.assign(static_cast<std::size_t>(jobs), {});
    tpl.interview_terms.assign(static_cast<std::size_t>(jobs), {});
    std::vector<std::vector<model::Term>> doc(static_cast<std::size_t>(jobs)),
        interview(static_cast<std::size_t>(jobs));
    for (const auto& t : c.lhs.terms) {
      switch (t.stoch.param) {
        case model::StochRef::Param::DocTime:
          doc[static_cast<std::size_t>(t.stoch.job)].push_back(t);
          break;
        case model::StochRef::Param::InterviewTime:
          interview[static_cast<std::size_t>(t.stoch.job)].push_back(t);
          break;
        default:
          throw std::logic_error("time template: unexpected deterministic term");
      }
    }
    // Recover the period from the label "...[t=k]".
    const auto pos = c.label.rfind("t=");
    tpl.period = pos == std::string::npos ? -1 : std::stoi(c.label.substr(pos + 2));
    for (int j = 0; j < jobs; ++j) {
      tpl.doc_terms[static_cast<std::size_t>(j)] =
          reduce_stochastic_group(doc[static_cast<std::size_t>(j)], 1.0);
      tpl.interview_terms[static_cast<std::size_t>(j)] =
          reduce_stochastic_group(interview[static_cast<std::size_t>(j)], 1.0);
    }
    m_.time_templates.push_back(std::move(tpl));
  }

  void accept_template(const model::Constraint& c) {
    AcceptTemplate tpl;
    std::vector<model::Term> accepted;
    int job = -1;
    for (const auto& t : c.lhs.terms) {
      if (t.stoch.param == model::StochRef::Param::None) {
        if (t.degree() != 1 || t.coef != 1.0)
          throw std::logic_error("accept template: expected a bare hired-count term");
        tpl.hired_col = t.v1;
      } else if (t.stoch.param == model::StochRef::Param::Acceptance) {
        accepted.push_back(t);
        job = t.stoch.job;
      } else {
        throw std::logic_error("accept template: unexpected stochastic parameter");
      }
    }
    tpl.job = job;
    const auto pos = c.label.rfind("t=");
    tpl.period = pos == std::string::npos ? -1 : std::stoi(c.label.substr(pos + 2));
    // Z - b * sum <= 0 arrives with negative coefficients; store the sum.
    tpl.accepted = reduce_stochastic_group(accepted, -1.0);
    m_.accept_templates.push_back(std::move(tpl));
  }

  const model::NonlinearModel& nl_;
  const model::Bounds& bounds_;
  MilpModel m_;
  ExpansionMap map_;
  std::set<std::pair<int, int>> envelope_done_;
  std::map<int, double> valid_lb_;  // proven-tighter lower bounds for envelopes
};

}  // namespace

std::pair<MilpModel, ExpansionMap> linearize_model(const model::NonlinearModel& nl,
                                                   const model::Bounds& bounds) {
  return Linearizer(nl, bounds).run();
}

MilpDimensionReport dimensions(const MilpModel& m) {
  MilpDimensionReport rep;
  std::map<std::string, int> vf, cf;
  for (const auto& v : m.vars) {
    std::string family = v.provenance;
    const auto colon = family.find(':');
    if (colon != std::string::npos) family = family.substr(0, colon + 1) + "*";
    ++vf[family];
  }
  for (const auto& r : m.rows) {
    std::string family = r.provenance;
    const auto colon = family.find(':');
    if (colon != std::string::npos) family = family.substr(0, colon + 1) + "*";
    ++cf[family];
  }
  cf["family 12"] += static_cast<int>(m.time_templates.size());
  cf["family 17"] += static_cast<int>(m.accept_templates.size());
  for (const auto& [k, v] : vf) rep.variable_families.emplace_back(k, v);
  for (const auto& [k, v] : cf) rep.constraint_families.emplace_back(k, v);
  rep.variables = m.cols();
  rep.constraints = m.num_rows() + static_cast<int>(m.time_templates.size()) +
                    static_cast<int>(m.accept_templates.size());
  return rep;
}

}  // namespace talentplan::lin
