#include "talentplan/instance_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "talentplan/topsis.hpp"

namespace talentplan::io {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& required, const std::set<std::string>& optional) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  for (const auto& key : required)
    if (!j.contains(key)) throw SchemaError(where, "missing required key '" + key + "'");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key))
      throw SchemaError(where + "." + key, "unknown key");
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where, "expected a string");
  return j.get<std::string>();
}

Eigen::VectorXd number_vector(const json& j, const std::string& where, int expected) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  if (expected >= 0 && static_cast<int>(j.size()) != expected) {
    std::ostringstream os;
    os << "expected " << expected << " entries, got " << j.size();
    throw SchemaError(where, os.str());
  }
  Eigen::VectorXd out(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out[static_cast<Eigen::Index>(k)] = number(j[k], where + "[" + std::to_string(k) + "]");
  return out;
}

dist::Distribution parse_distribution(const json& j, const std::string& where) {
  require_keys(j, where, {"kind"}, {"low", "high", "rate", "location", "scale", "mean", "sd"});
  const std::string kind = text(j.at("kind"), where + ".kind");
  if (kind == "uniform") {
    require_keys(j, where, {"kind", "low", "high"}, {});
    return dist::Distribution::uniform(number(j.at("low"), where + ".low"),
                                       number(j.at("high"), where + ".high"));
  }
  if (kind == "exponential") {
    require_keys(j, where, {"kind", "rate"}, {});
    return dist::Distribution::exponential(number(j.at("rate"), where + ".rate"));
  }
  if (kind == "lognormal") {
    require_keys(j, where, {"kind", "location", "scale"}, {});
    return dist::Distribution::lognormal(number(j.at("location"), where + ".location"),
                                         number(j.at("scale"), where + ".scale"));
  }
  if (kind == "normal") {
    require_keys(j, where, {"kind", "mean", "sd"}, {});
    return dist::Distribution::normal(number(j.at("mean"), where + ".mean"),
                                      number(j.at("sd"), where + ".sd"));
  }
  throw SchemaError(where + ".kind", "unknown distribution kind '" + kind + "'");
}

json distribution_to_json(const dist::Distribution& d) {
  json j;
  switch (d.kind) {
    case dist::Kind::Uniform:
      j = {{"kind", "uniform"}, {"low", d.a}, {"high", d.b}};
      break;
    case dist::Kind::Exponential:
      j = {{"kind", "exponential"}, {"rate", d.rate}};
      break;
    case dist::Kind::Lognormal:
      j = {{"kind", "lognormal"}, {"location", d.mu}, {"scale", d.sigma}};
      break;
    case dist::Kind::Normal:
      j = {{"kind", "normal"}, {"mean", d.mu}, {"sd", d.sigma}};
      break;
  }
  return j;
}

}  // namespace

Instance parse_instance(const json& doc) {
  require_keys(doc, "$",
               {"horizon", "jobs", "channels", "transfer_matrix", "stochastic", "config",
                "change_cap"},
               {"topsis"});

  Instance inst;
  const json& h = doc.at("horizon");
  require_keys(h, "horizon", {"channels", "jobs", "periods"}, {});
  inst.horizon.channels = integer(h.at("channels"), "horizon.channels");
  inst.horizon.jobs = integer(h.at("jobs"), "horizon.jobs");
  inst.horizon.periods = integer(h.at("periods"), "horizon.periods");
  const int m = inst.horizon.channels, n = inst.horizon.jobs, T = inst.horizon.periods;
  if (m < 1 || n < 1 || T < 1) throw SchemaError("horizon", "all dimensions must be >= 1");

  const json& jobs = doc.at("jobs");
  if (!jobs.is_array() || static_cast<int>(jobs.size()) != n)
    throw SchemaError("jobs", "expected one entry per job");
  inst.initial_headcount.resize(n);
  auto job_matrix = [&](Eigen::ArrayXXd& target) { target.resize(n, T); };
  job_matrix(inst.excess_cost);
  job_matrix(inst.shortage_cost);
  job_matrix(inst.max_applications);
  job_matrix(inst.job_interview_cap);
  job_matrix(inst.max_offer_rate);
  job_matrix(inst.max_growth);
  job_matrix(inst.revenue);
  job_matrix(inst.salary);
  job_matrix(inst.interview_cost);
  for (int j = 0; j < n; ++j) {
    const std::string where = "jobs[" + std::to_string(j) + "]";
    const json& job = jobs[static_cast<std::size_t>(j)];
    require_keys(job, where,
                 {"initial_headcount", "excess_cost", "shortage_cost", "max_applications",
                  "interview_rate_cap", "max_offer_rate", "max_growth", "revenue", "salary",
                  "interview_cost"},
                 {"name"});
    if (job.contains("name")) inst.job_names.push_back(text(job.at("name"), where + ".name"));
    inst.initial_headcount[j] = number(job.at("initial_headcount"), where + ".initial_headcount");
    auto fill = [&](const char* key, Eigen::ArrayXXd& target) {
      target.row(j) = number_vector(job.at(key), where + "." + key, T).transpose().array();
    };
    fill("excess_cost", inst.excess_cost);
    fill("shortage_cost", inst.shortage_cost);
    fill("max_applications", inst.max_applications);
    fill("interview_rate_cap", inst.job_interview_cap);
    fill("max_offer_rate", inst.max_offer_rate);
    fill("max_growth", inst.max_growth);
    fill("revenue", inst.revenue);
    fill("salary", inst.salary);
    fill("interview_cost", inst.interview_cost);
  }

  const json& cap = doc.at("change_cap");
  require_keys(cap, "change_cap", {"mode"}, {"values", "fraction"});
  const std::string mode = text(cap.at("mode"), "change_cap.mode");
  if (mode == "constant") {
    require_keys(cap, "change_cap", {"mode", "values"}, {});
    const json& values = cap.at("values");
    if (!values.is_array() || static_cast<int>(values.size()) != n)
      throw SchemaError("change_cap.values", "expected one row per job");
    inst.change_cap_mode = ChangeCapMode::Constant;
    inst.change_cap.resize(n, T);
    for (int j = 0; j < n; ++j)
      inst.change_cap.row(j) =
          number_vector(values[static_cast<std::size_t>(j)],
                        "change_cap.values[" + std::to_string(j) + "]", T)
              .transpose()
              .array();
  } else if (mode == "fraction_of_current") {
    require_keys(cap, "change_cap", {"mode", "fraction"}, {});
    inst.change_cap_mode = ChangeCapMode::FractionOfCurrent;
    inst.change_cap_fraction = number(cap.at("fraction"), "change_cap.fraction");
  } else {
    throw SchemaError("change_cap.mode", "expected 'constant' or 'fraction_of_current'");
  }

  const json& channels = doc.at("channels");
  if (!channels.is_array() || static_cast<int>(channels.size()) != m)
    throw SchemaError("channels", "expected one entry per channel");
  inst.channel_capacity.resize(m, T);
  inst.channel_interview_cap.resize(m, T);
  const bool has_topsis = doc.contains("topsis");
  inst.channel_weight = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    const std::string where = "channels[" + std::to_string(i) + "]";
    const json& ch = channels[static_cast<std::size_t>(i)];
    require_keys(ch, where, {"capacity", "interview_rate_cap"}, {"name", "weight"});
    if (ch.contains("name")) inst.channel_names.push_back(text(ch.at("name"), where + ".name"));
    inst.channel_capacity.row(i) =
        number_vector(ch.at("capacity"), where + ".capacity", T).transpose().array();
    inst.channel_interview_cap.row(i) =
        number_vector(ch.at("interview_rate_cap"), where + ".interview_rate_cap", T)
            .transpose()
            .array();
    if (ch.contains("weight")) {
      if (has_topsis)
        throw SchemaError(where + ".weight",
                          "give either per-channel weights or a topsis section, not both");
      inst.channel_weight[i] = number(ch.at("weight"), where + ".weight");
    } else if (!has_topsis) {
      throw SchemaError(where, "missing 'weight' (no topsis section to compute it from)");
    }
  }

  if (has_topsis) {
    const json& tp = doc.at("topsis");
    require_keys(tp, "topsis", {"ratings", "senses", "weights"}, {"criteria"});
    const json& ratings = tp.at("ratings");
    if (!ratings.is_array() || static_cast<int>(ratings.size()) != m)
      throw SchemaError("topsis.ratings", "expected one row per channel");
    const int ncrit = ratings.empty() ? 0 : static_cast<int>(ratings[0].size());
    topsis::DecisionMatrix dm;
    dm.ratings.resize(m, ncrit);
    for (int i = 0; i < m; ++i)
      dm.ratings.row(i) = number_vector(ratings[static_cast<std::size_t>(i)],
                                        "topsis.ratings[" + std::to_string(i) + "]", ncrit)
                              .transpose();
    const json& senses = tp.at("senses");
    if (!senses.is_array() || static_cast<int>(senses.size()) != ncrit)
      throw SchemaError("topsis.senses", "expected one entry per criterion");
    for (std::size_t k = 0; k < senses.size(); ++k) {
      const std::string s = text(senses[k], "topsis.senses[" + std::to_string(k) + "]");
      if (s == "benefit")
        dm.senses.push_back(topsis::Sense::Benefit);
      else if (s == "cost")
        dm.senses.push_back(topsis::Sense::Cost);
      else
        throw SchemaError("topsis.senses[" + std::to_string(k) + "]",
                          "expected 'benefit' or 'cost'");
    }
    dm.weights = number_vector(tp.at("weights"), "topsis.weights", ncrit);
    const std::string err = dm.validate();
    if (!err.empty()) throw SchemaError("topsis", err);
    inst.channel_weight = topsis::evaluate(dm).closeness;
  }

  const json& transfer = doc.at("transfer_matrix");
  if (!transfer.is_array() || static_cast<int>(transfer.size()) != n)
    throw SchemaError("transfer_matrix", "expected one row per job");
  inst.transfer.resize(n, n);
  for (int a = 0; a < n; ++a) {
    const json& row = transfer[static_cast<std::size_t>(a)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw SchemaError("transfer_matrix[" + std::to_string(a) + "]",
                        "expected one entry per job");
    for (int b = 0; b < n; ++b)
      inst.transfer(a, b) =
          integer(row[static_cast<std::size_t>(b)],
                  "transfer_matrix[" + std::to_string(a) + "][" + std::to_string(b) + "]");
  }

  const json& stochastic = doc.at("stochastic");
  if (!stochastic.is_array() || static_cast<int>(stochastic.size()) != n)
    throw SchemaError("stochastic", "expected one entry per job");
  for (int j = 0; j < n; ++j) {
    const std::string where = "stochastic[" + std::to_string(j) + "]";
    const json& s = stochastic[static_cast<std::size_t>(j)];
    require_keys(s, where, {"doc_time", "interview_time", "acceptance_rate"}, {});
    StochasticSpec spec;
    spec.doc_time = parse_distribution(s.at("doc_time"), where + ".doc_time");
    spec.interview_time = parse_distribution(s.at("interview_time"), where + ".interview_time");
    spec.acceptance_rate =
        parse_distribution(s.at("acceptance_rate"), where + ".acceptance_rate");
    inst.stochastic.push_back(spec);
  }

  const json& config = doc.at("config");
  require_keys(config, "config",
               {"epsilon", "big_m", "recruit_time_budget", "alpha1", "alpha2"},
               {"sample_size", "rng_seed"});
  inst.config.epsilon = number(config.at("epsilon"), "config.epsilon");
  inst.config.big_m = number(config.at("big_m"), "config.big_m");
  inst.config.recruit_time_budget =
      number_vector(config.at("recruit_time_budget"), "config.recruit_time_budget", T);
  inst.config.alpha1 = number(config.at("alpha1"), "config.alpha1");
  inst.config.alpha2 = number(config.at("alpha2"), "config.alpha2");
  if (config.contains("sample_size"))
    inst.config.sample_size = integer(config.at("sample_size"), "config.sample_size");
  if (config.contains("rng_seed"))
    inst.config.rng_seed =
        static_cast<std::uint64_t>(integer(config.at("rng_seed"), "config.rng_seed"));

  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::ostringstream os;
    os << violations.front().message;
    if (violations.size() > 1) os << " (+" << violations.size() - 1 << " more violations)";
    throw SchemaError(violations.front().field + violations.front().index, os.str());
  }
  return inst;
}

nlohmann::json to_json(const Instance& inst) {
  json doc;
  doc["horizon"] = {{"channels", inst.channels()}, {"jobs", inst.jobs()},
                    {"periods", inst.periods()}};
  json jobs = json::array();
  auto row_vec = [](const Eigen::ArrayXXd& a, int j) {
    std::vector<double> v(static_cast<std::size_t>(a.cols()));
    for (int t = 0; t < a.cols(); ++t) v[static_cast<std::size_t>(t)] = a(j, t);
    return v;
  };
  for (int j = 0; j < inst.jobs(); ++j) {
    json job;
    if (j < static_cast<int>(inst.job_names.size()))
      job["name"] = inst.job_names[static_cast<std::size_t>(j)];
    job["initial_headcount"] = inst.initial_headcount[j];
    job["excess_cost"] = row_vec(inst.excess_cost, j);
    job["shortage_cost"] = row_vec(inst.shortage_cost, j);
    job["max_applications"] = row_vec(inst.max_applications, j);
    job["interview_rate_cap"] = row_vec(inst.job_interview_cap, j);
    job["max_offer_rate"] = row_vec(inst.max_offer_rate, j);
    job["max_growth"] = row_vec(inst.max_growth, j);
    job["revenue"] = row_vec(inst.revenue, j);
    job["salary"] = row_vec(inst.salary, j);
    job["interview_cost"] = row_vec(inst.interview_cost, j);
    jobs.push_back(job);
  }
  doc["jobs"] = jobs;

  if (inst.change_cap_mode == ChangeCapMode::Constant) {
    json values = json::array();
    for (int j = 0; j < inst.jobs(); ++j) values.push_back(row_vec(inst.change_cap, j));
    doc["change_cap"] = {{"mode", "constant"}, {"values", values}};
  } else {
    doc["change_cap"] = {{"mode", "fraction_of_current"},
                         {"fraction", inst.change_cap_fraction}};
  }

  json channels = json::array();
  for (int i = 0; i < inst.channels(); ++i) {
    json ch;
    if (i < static_cast<int>(inst.channel_names.size()))
      ch["name"] = inst.channel_names[static_cast<std::size_t>(i)];
    ch["capacity"] = row_vec(inst.channel_capacity, i);
    ch["interview_rate_cap"] = row_vec(inst.channel_interview_cap, i);
    ch["weight"] = inst.channel_weight[i];
    channels.push_back(ch);
  }
  doc["channels"] = channels;

  json transfer = json::array();
  for (int a = 0; a < inst.jobs(); ++a) {
    json row = json::array();
    for (int b = 0; b < inst.jobs(); ++b) row.push_back(inst.transfer(a, b));
    transfer.push_back(row);
  }
  doc["transfer_matrix"] = transfer;

  json stochastic = json::array();
  for (const auto& s : inst.stochastic) {
    stochastic.push_back({{"doc_time", distribution_to_json(s.doc_time)},
                          {"interview_time", distribution_to_json(s.interview_time)},
                          {"acceptance_rate", distribution_to_json(s.acceptance_rate)}});
  }
  doc["stochastic"] = stochastic;

  std::vector<double> rt(static_cast<std::size_t>(inst.periods()));
  for (int t = 0; t < inst.periods(); ++t)
    rt[static_cast<std::size_t>(t)] = inst.config.recruit_time_budget[t];
  doc["config"] = {{"epsilon", inst.config.epsilon},
                   {"big_m", inst.config.big_m},
                   {"recruit_time_budget", rt},
                   {"alpha1", inst.config.alpha1},
                   {"alpha2", inst.config.alpha2},
                   {"sample_size", inst.config.sample_size},
                   {"rng_seed", static_cast<long long>(inst.config.rng_seed)}};
  return doc;
}

Instance ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("$", "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("JSON parse error: ") + e.what());
  }
  return parse_instance(doc);
}

void write_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_instance: cannot open " + path);
  out << to_json(inst).dump(2) << "\n";
}

bool equal(const Instance& a, const Instance& b, double tol) {
  auto close = [&](double x, double y) { return std::abs(x - y) <= tol; };
  if (a.horizon.channels != b.horizon.channels || a.horizon.jobs != b.horizon.jobs ||
      a.horizon.periods != b.horizon.periods)
    return false;
  auto arrays_close = [&](const Eigen::ArrayXXd& x, const Eigen::ArrayXXd& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
    return ((x - y).abs() <= tol).all();
  };
  if (!arrays_close(a.excess_cost, b.excess_cost)) return false;
  if (!arrays_close(a.shortage_cost, b.shortage_cost)) return false;
  if (!arrays_close(a.max_applications, b.max_applications)) return false;
  if (!arrays_close(a.job_interview_cap, b.job_interview_cap)) return false;
  if (!arrays_close(a.max_offer_rate, b.max_offer_rate)) return false;
  if (!arrays_close(a.max_growth, b.max_growth)) return false;
  if (!arrays_close(a.revenue, b.revenue)) return false;
  if (!arrays_close(a.salary, b.salary)) return false;
  if (!arrays_close(a.interview_cost, b.interview_cost)) return false;
  if (!arrays_close(a.channel_capacity, b.channel_capacity)) return false;
  if (!arrays_close(a.channel_interview_cap, b.channel_interview_cap)) return false;
  if (a.change_cap_mode != b.change_cap_mode) return false;
  if (a.change_cap_mode == ChangeCapMode::Constant) {
    if (!arrays_close(a.change_cap, b.change_cap)) return false;
  } else if (!close(a.change_cap_fraction, b.change_cap_fraction)) {
    return false;
  }
  if ((a.initial_headcount - b.initial_headcount).cwiseAbs().maxCoeff() > tol) return false;
  if ((a.channel_weight - b.channel_weight).cwiseAbs().maxCoeff() > tol) return false;
  if (a.transfer != b.transfer) return false;
  if (a.stochastic.size() != b.stochastic.size()) return false;
  for (std::size_t j = 0; j < a.stochastic.size(); ++j) {
    if (!(a.stochastic[j].doc_time == b.stochastic[j].doc_time)) return false;
    if (!(a.stochastic[j].interview_time == b.stochastic[j].interview_time)) return false;
    if (!(a.stochastic[j].acceptance_rate == b.stochastic[j].acceptance_rate)) return false;
  }
  if (!close(a.config.epsilon, b.config.epsilon) || !close(a.config.big_m, b.config.big_m))
    return false;
  if ((a.config.recruit_time_budget - b.config.recruit_time_budget).cwiseAbs().maxCoeff() > tol)
    return false;
  if (!close(a.config.alpha1, b.config.alpha1) || !close(a.config.alpha2, b.config.alpha2))
    return false;
  return a.config.sample_size == b.config.sample_size && a.config.rng_seed == b.config.rng_seed;
}

}  // namespace talentplan::io
