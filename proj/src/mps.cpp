#include "talentplan/mps.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace talentplan::milp {

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12G", v);
  return buf;
}

// Assigns MPS-safe names: the original when it is at most 8 characters and
// unique, otherwise prefix + running number.
std::vector<std::string> safe_names(const std::vector<std::string>& original, char prefix,
                                    std::vector<std::pair<std::string, std::string>>& renames) {
  std::vector<std::string> out(original.size());
  std::set<std::string> used;
  for (std::size_t k = 0; k < original.size(); ++k) {
    const std::string& name = original[k];
    if (name.size() <= 8 && name.find(' ') == std::string::npos && !used.count(name)) {
      out[k] = name;
      used.insert(name);
    }
  }
  long counter = 0;
  for (std::size_t k = 0; k < original.size(); ++k) {
    if (!out[k].empty()) continue;
    std::string candidate;
    do {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%c%07ld", prefix, counter++);
      candidate = buf;
    } while (used.count(candidate));
    out[k] = candidate;
    used.insert(candidate);
    renames.emplace_back(candidate, original[k]);
  }
  return out;
}

}  // namespace

std::string write_mps(const lin::MilpModel& m, const std::string& problem_name) {
  if (!m.resolved())
    throw std::invalid_argument("write_mps: stochastic templates are still pending");

  std::vector<std::string> row_names_in(m.rows.size()), col_names_in(m.vars.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r) row_names_in[r] = m.rows[r].name;
  for (std::size_t c = 0; c < m.vars.size(); ++c) col_names_in[c] = m.vars[c].name;
  std::vector<std::pair<std::string, std::string>> renames;
  const auto row_names = safe_names(row_names_in, 'R', renames);
  const auto col_names = safe_names(col_names_in, 'C', renames);

  std::ostringstream os;
  os << "* SENSE: MAXIMIZE\n";
  for (const auto& [fresh, original] : renames)
    os << "* RENAME " << fresh << " = " << original << "\n";
  os << "NAME          " << problem_name << "\n";

  auto pad8 = [](const std::string& s) {
    std::string out = s;
    out.resize(8, ' ');
    return out;
  };

  os << "ROWS\n";
  os << " N  COST\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const auto& row = m.rows[r];
    char type = 'E';
    if (std::isfinite(row.lo) && std::isfinite(row.hi))
      type = row.lo == row.hi ? 'E' : 'L';  // ranged rows emit L plus RANGES
    else if (std::isfinite(row.hi))
      type = 'L';
    else if (std::isfinite(row.lo))
      type = 'G';
    else
      type = 'N';
    os << " " << type << "  " << row_names[r] << "\n";
  }

  // column-major coefficient lists
  std::vector<std::vector<std::pair<std::size_t, double>>> by_col(m.vars.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (const auto& e : m.rows[r].entries)
      by_col[static_cast<std::size_t>(e.col)].emplace_back(r, e.coef);
  std::vector<double> obj(m.vars.size(), 0.0);
  for (const auto& e : m.objective) obj[static_cast<std::size_t>(e.col)] += e.coef;

  os << "COLUMNS\n";
  bool in_integer = false;
  long marker = 0;
  for (std::size_t c = 0; c < m.vars.size(); ++c) {
    const bool integral = m.vars[c].kind != model::VarKind::Continuous;
    if (integral != in_integer) {
      os << "    MARKER" << marker++ << "  'MARKER'                 "
         << (integral ? "'INTORG'" : "'INTEND'") << "\n";
      in_integer = integral;
    }
    std::vector<std::pair<std::string, double>> entries;
    if (obj[c] != 0.0) entries.emplace_back("COST", obj[c]);
    for (const auto& [r, coef] : by_col[c]) entries.emplace_back(row_names[r], coef);
    if (entries.empty()) entries.emplace_back("COST", 0.0);
    for (std::size_t k = 0; k < entries.size(); k += 2) {
      os << "    " << pad8(col_names[c]) << "  " << pad8(entries[k].first) << "  "
         << format_value(entries[k].second);
      if (k + 1 < entries.size())
        os << "   " << pad8(entries[k + 1].first) << "  " << format_value(entries[k + 1].second);
      os << "\n";
    }
  }
  if (in_integer)
    os << "    MARKER" << marker++ << "  'MARKER'                 'INTEND'\n";

  os << "RHS\n";
  if (m.objective_constant != 0.0)
    os << "    RHS       COST      " << format_value(-m.objective_constant) << "\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const auto& row = m.rows[r];
    double rhs;
    if (std::isfinite(row.hi))
      rhs = row.hi;
    else if (std::isfinite(row.lo))
      rhs = row.lo;
    else
      continue;
    if (rhs != 0.0)
      os << "    RHS       " << pad8(row_names[r]) << "  " << format_value(rhs) << "\n";
  }

  std::ostringstream ranges;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const auto& row = m.rows[r];
    if (std::isfinite(row.lo) && std::isfinite(row.hi) && row.lo != row.hi)
      ranges << "    RNG       " << pad8(row_names[r]) << "  " << format_value(row.hi - row.lo)
             << "\n";
  }
  if (!ranges.str().empty()) os << "RANGES\n" << ranges.str();

  os << "BOUNDS\n";
  for (std::size_t c = 0; c < m.vars.size(); ++c) {
    const auto& v = m.vars[c];
    if (v.kind == model::VarKind::Binary && v.lb == 0.0 && v.ub == 1.0) {
      os << " BV BND       " << pad8(col_names[c]) << "\n";
      continue;
    }
    if (v.lb == v.ub) {
      os << " FX BND       " << pad8(col_names[c]) << "  " << format_value(v.lb) << "\n";
      continue;
    }
    if (!std::isfinite(v.lb))
      os << " MI BND       " << pad8(col_names[c]) << "\n";
    else if (v.lb != 0.0)
      os << " LO BND       " << pad8(col_names[c]) << "  " << format_value(v.lb) << "\n";
    if (std::isfinite(v.ub))
      os << " UP BND       " << pad8(col_names[c]) << "  " << format_value(v.ub) << "\n";
  }
  os << "ENDATA\n";
  return os.str();
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

lin::MilpModel read_mps(const std::string& text) {
  lin::MilpModel m;
  std::map<std::string, int> row_index;  // excluding the objective row
  std::map<std::string, int> col_index;
  std::string objective_row;
  std::map<std::string, char> row_type;
  enum Section { None, Rows, Columns, Rhs, Ranges, Bounds, Done } section = None;
  bool integer_mode = false;
  std::vector<char> explicit_lb;

  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '*') continue;
    if (line[0] != ' ') {
      const auto toks = tokens(line);
      const std::string& head = toks.empty() ? line : toks[0];
      if (head == "NAME")
        section = None;
      else if (head == "ROWS")
        section = Rows;
      else if (head == "COLUMNS")
        section = Columns;
      else if (head == "RHS")
        section = Rhs;
      else if (head == "RANGES")
        section = Ranges;
      else if (head == "BOUNDS")
        section = Bounds;
      else if (head == "ENDATA")
        section = Done;
      else
        throw std::invalid_argument("read_mps: unknown section " + head);
      continue;
    }
    const auto toks = tokens(line);
    if (toks.empty()) continue;
    switch (section) {
      case Rows: {
        if (toks.size() < 2) throw std::invalid_argument("read_mps: malformed ROWS line");
        const char type = static_cast<char>(std::toupper(toks[0][0]));
        if (type == 'N') {
          if (objective_row.empty()) objective_row = toks[1];
          break;
        }
        row_type[toks[1]] = type;
        row_index[toks[1]] = m.num_rows();
        double lo = -lin::kInf, hi = lin::kInf;
        if (type == 'E') lo = hi = 0.0;
        if (type == 'L') hi = 0.0;
        if (type == 'G') lo = 0.0;
        m.add_row(toks[1], lo, hi, "mps");
        break;
      }
      case Columns: {
        if (toks.size() >= 3 && toks[2] == "'INTORG'") {
          integer_mode = true;
          break;
        }
        if (toks.size() >= 3 && toks[2] == "'INTEND'") {
          integer_mode = false;
          break;
        }
        if (toks.size() < 3) throw std::invalid_argument("read_mps: malformed COLUMNS line");
        auto it = col_index.find(toks[0]);
        int col;
        if (it == col_index.end()) {
          col = m.add_var(toks[0],
                          integer_mode ? model::VarKind::Integer : model::VarKind::Continuous,
                          0.0, lin::kInf, "mps");
          col_index[toks[0]] = col;
          explicit_lb.push_back(0);
        } else {
          col = it->second;
        }
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          const std::string& row = toks[k];
          const double value = std::stod(toks[k + 1]);
          if (row == objective_row) {
            m.add_objective(col, value);
          } else {
            auto rit = row_index.find(row);
            if (rit == row_index.end())
              throw std::invalid_argument("read_mps: unknown row " + row);
            m.rows[static_cast<std::size_t>(rit->second)].entries.push_back({col, value});
          }
        }
        break;
      }
      case Rhs: {
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          const std::string& row = toks[k];
          const double value = std::stod(toks[k + 1]);
          if (row == objective_row) {
            m.objective_constant = -value;
            continue;
          }
          auto rit = row_index.find(row);
          if (rit == row_index.end()) throw std::invalid_argument("read_mps: unknown RHS row");
          auto& r = m.rows[static_cast<std::size_t>(rit->second)];
          switch (row_type[row]) {
            case 'E':
              r.lo = r.hi = value;
              break;
            case 'L':
              r.hi = value;
              break;
            case 'G':
              r.lo = value;
              break;
            default:
              break;
          }
        }
        break;
      }
      case Ranges: {
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          auto rit = row_index.find(toks[k]);
          if (rit == row_index.end()) throw std::invalid_argument("read_mps: unknown RANGES row");
          auto& r = m.rows[static_cast<std::size_t>(rit->second)];
          const double range = std::stod(toks[k + 1]);
          switch (row_type[toks[k]]) {
            case 'L':
              r.lo = r.hi - std::abs(range);
              break;
            case 'G':
              r.hi = r.lo + std::abs(range);
              break;
            case 'E':
              if (range >= 0.0)
                r.hi = r.lo + range;
              else
                r.lo = r.hi + range;
              break;
            default:
              break;
          }
        }
        break;
      }
      case Bounds: {
        if (toks.size() < 3) throw std::invalid_argument("read_mps: malformed BOUNDS line");
        const std::string& type = toks[0];
        auto cit = col_index.find(toks[2]);
        if (cit == col_index.end())
          throw std::invalid_argument("read_mps: unknown BOUNDS column " + toks[2]);
        auto& v = m.vars[static_cast<std::size_t>(cit->second)];
        const double value = toks.size() >= 4 ? std::stod(toks[3]) : 0.0;
        if (type == "UP") {
          v.ub = value;
          if (value < 0.0 && !explicit_lb[static_cast<std::size_t>(cit->second)])
            v.lb = -lin::kInf;
        } else if (type == "UI") {
          v.ub = value;
          v.kind = model::VarKind::Integer;
        } else if (type == "LO") {
          v.lb = value;
          explicit_lb[static_cast<std::size_t>(cit->second)] = 1;
        } else if (type == "LI") {
          v.lb = value;
          v.kind = model::VarKind::Integer;
          explicit_lb[static_cast<std::size_t>(cit->second)] = 1;
        } else if (type == "FX") {
          v.lb = v.ub = value;
        } else if (type == "FR") {
          v.lb = -lin::kInf;
          v.ub = lin::kInf;
        } else if (type == "MI") {
          v.lb = -lin::kInf;
        } else if (type == "PL") {
          v.ub = lin::kInf;
        } else if (type == "BV") {
          v.kind = model::VarKind::Binary;
          v.lb = 0.0;
          v.ub = 1.0;
        } else {
          throw std::invalid_argument("read_mps: unsupported bound type " + type);
        }
        break;
      }
      case None:
      case Done:
        break;
    }
  }
  // Integer columns marked INTORG with unit range and binary-like bounds stay
  // Integer; the distinction does not change the feasible set.
  return m;
}

}  // namespace talentplan::milp
