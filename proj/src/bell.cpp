#include "cvnl/bell.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "cvnl/errors.hpp"
#include "cvnl/wigner.hpp"

namespace cvnl {

namespace {

constexpr std::array<char, 3> kPartyLetters = {'A', 'B', 'C'};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_real(std::string_view tok, int line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError(line, "malformed number '" + std::string(tok) + "'");
  }
  return v;
}

Selector parse_selector(std::string_view tok, int party, int line) {
  if (tok == "-") return Selector::kAbsent;
  if (tok.size() == 2 && tok[0] == kPartyLetters[static_cast<std::size_t>(party)]) {
    if (tok[1] == '0') return Selector::kSetting0;
    if (tok[1] == '1') return Selector::kSetting1;
  }
  throw ParseError(line, "malformed selector '" + std::string(tok) + "' for party " +
                             kPartyLetters[static_cast<std::size_t>(party)]);
}

// Accumulates terms, merging identical selectors in first-seen order.
class TermAccumulator {
 public:
  void add(const PartySelectors& sel, double coefficient) {
    for (auto& t : terms_) {
      if (t.parties == sel) {
        t.coefficient += coefficient;
        return;
      }
    }
    terms_.push_back({coefficient, sel});
  }
  std::vector<BellTerm> take() { return std::move(terms_); }

 private:
  std::vector<BellTerm> terms_;
};

// coefficient * p(abc|xyz) = coefficient / 8 * sum over party subsets T of
// prod_{t in T} outcome_t * <prod_{t in T} setting_t>.
void expand_probability(std::string_view tok, double coefficient, int line, TermAccumulator& acc,
                        double& constant) {
  // p(abc|xyz)
  if (tok.size() != 10 || tok.substr(0, 2) != "p(" || tok[5] != '|' || tok[9] != ')') {
    throw ParseError(line, "malformed probability term '" + std::string(tok) + "'");
  }
  std::array<double, 3> outcome{};
  std::array<Selector, 3> setting{};
  for (std::size_t j = 0; j < 3; ++j) {
    const char o = tok[2 + j];
    const char x = tok[6 + j];
    if (o != '+' && o != '-') throw ParseError(line, "outcome must be '+' or '-'");
    if (x != '0' && x != '1') throw ParseError(line, "setting must be '0' or '1'");
    outcome[j] = o == '+' ? 1.0 : -1.0;
    setting[j] = x == '0' ? Selector::kSetting0 : Selector::kSetting1;
  }
  for (int mask = 0; mask < 8; ++mask) {
    PartySelectors sel{Selector::kAbsent, Selector::kAbsent, Selector::kAbsent};
    double sign = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (mask & (4 >> j)) {
        sel[j] = setting[j];
        sign *= outcome[j];
      }
    }
    if (mask == 0) {
      constant += coefficient / 8.0;
    } else {
      acc.add(sel, sign * coefficient / 8.0);
    }
  }
}

// Points and evaluators for the seven party subsets of one state.
class SubsetEvaluators {
 public:
  explicit SubsetEvaluators(const CovarianceMatrix& cm) {
    if (cm.modes() != 3) throw DimensionMismatch("Bell expressions need a three-mode state");
    for (int mask = 1; mask < 8; ++mask) {
      std::vector<int> modes;
      for (int j = 0; j < 3; ++j) {
        if (mask & (4 >> j)) modes.push_back(j);
      }
      evaluators_[static_cast<std::size_t>(mask)] =
          std::make_unique<ParityEvaluator>(cm, ModeSet(modes));
    }
  }

  double correlator(const PartySelectors& sel, const MeasurementSettings& s) const {
    int mask = 0;
    Eigen::Matrix<double, 6, 1> buf;
    int k = 0;
    for (int j = 0; j < 3; ++j) {
      const auto choice = sel[static_cast<std::size_t>(j)];
      if (choice == Selector::kAbsent) continue;
      mask |= 4 >> j;
      buf.segment<2>(2 * k) = s.setting(j, static_cast<int>(choice));
      ++k;
    }
    if (mask == 0) return 1.0;
    return evaluators_[static_cast<std::size_t>(mask)]->correlator(buf.head(2 * k));
  }

 private:
  std::array<std::unique_ptr<ParityEvaluator>, 8> evaluators_;
};

PartySelectors selectors_from_index(std::size_t idx) {
  return {static_cast<Selector>(idx / 9), static_cast<Selector>((idx / 3) % 3),
          static_cast<Selector>(idx % 3)};
}

}  // namespace

BellExpression parse_expression(std::string_view text, std::string name) {
  TermAccumulator acc;
  double constant = 0.0;
  bool have_bound = false;
  double bound = 0.0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t seg_pos = 0;
    while (seg_pos <= line.size()) {
      const auto semi = std::min(line.find(';', seg_pos), line.size());
      const auto entry = trim(line.substr(seg_pos, semi - seg_pos));
      seg_pos = semi + 1;
      if (entry.empty()) continue;

      const auto toks = split_ws(entry);
      if (have_bound) throw ParseError(line_no, "entries after the bound line");
      if (toks[0] == "bound") {
        if (toks.size() != 2) throw ParseError(line_no, "expected 'bound <real>'");
        bound = parse_real(toks[1], line_no);
        have_bound = true;
        continue;
      }
      const double coefficient = parse_real(toks[0], line_no);
      if (toks.size() == 2 && toks[1].starts_with("p(")) {
        expand_probability(toks[1], coefficient, line_no, acc, constant);
        continue;
      }
      if (toks.size() != 4) {
        throw ParseError(line_no, "expected '<coefficient> <selA> <selB> <selC>'");
      }
      PartySelectors sel{};
      for (int j = 0; j < 3; ++j) {
        sel[static_cast<std::size_t>(j)] = parse_selector(toks[static_cast<std::size_t>(j) + 1], j, line_no);
      }
      if (sel == PartySelectors{Selector::kAbsent, Selector::kAbsent, Selector::kAbsent}) {
        constant += coefficient;
      } else {
        acc.add(sel, coefficient);
      }
    }
    if (eol == text.size()) break;
  }
  if (!have_bound) throw ParseError(line_no, "missing 'bound <real>' line");
  BellExpression e{std::move(name), acc.take(), bound - constant};
  if (e.terms.empty()) throw ParseError(line_no, "expression has no correlator terms");
  return e;
}

BellExpression load_expression(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open inequality file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  auto stem = path.substr(path.find_last_of('/') + 1);
  return parse_expression(buf.str(), stem.substr(0, stem.find('.')));
}

std::string write_expression(const BellExpression& e) {
  std::string out;
  if (!e.name.empty()) out += "# " + e.name + "\n";
  char num[64];
  for (const auto& t : e.terms) {
    std::snprintf(num, sizeof num, "%.17g", t.coefficient);
    out += num;
    for (std::size_t j = 0; j < 3; ++j) {
      out += ' ';
      if (t.parties[j] == Selector::kAbsent) {
        out += '-';
      } else {
        out += kPartyLetters[j];
        out += t.parties[j] == Selector::kSetting0 ? '0' : '1';
      }
    }
    out += '\n';
  }
  std::snprintf(num, sizeof num, "%.17g", e.bound);
  out += "bound ";
  out += num;
  out += '\n';
  return out;
}

BellExpression svetlichny_expression() {
  return parse_expression(
      "1 A1 B0 C0\n"
      "1 A0 B1 C0\n"
      "1 A0 B0 C1\n"
      "-1 A1 B1 C1\n"
      "1 A0 B1 C1\n"
      "1 A1 B0 C1\n"
      "1 A1 B1 C0\n"
      "-1 A0 B0 C0\n"
      "bound 4\n",
      "svetlichny");
}

BellExpression resolve_expression(const std::string& name_or_path) {
  if (name_or_path == "svetlichny") return svetlichny_expression();
  return load_expression(name_or_path);
}

CorrelatorTable::CorrelatorTable() {
  values_.fill(0.0);
  values_[26] = 1.0;
}

std::size_t CorrelatorTable::index(const PartySelectors& sel) {
  return static_cast<std::size_t>(9 * static_cast<int>(sel[0]) + 3 * static_cast<int>(sel[1]) +
                                  static_cast<int>(sel[2]));
}

void CorrelatorTable::set(const PartySelectors& sel, double v) {
  const auto i = index(sel);
  if (i == 26) throw DomainError("the empty correlator is fixed to 1");
  values_[i] = v;
}

CorrelatorTable correlator_table(const CovarianceMatrix& cm, const MeasurementSettings& s) {
  const SubsetEvaluators ev(cm);
  CorrelatorTable t;
  for (std::size_t i = 0; i < 26; ++i) {
    const auto sel = selectors_from_index(i);
    t.set(sel, ev.correlator(sel, s));
  }
  return t;
}

OutcomeDistribution correlators_to_probabilities(const CorrelatorTable& t, int x, int y, int z) {
  const std::array<Selector, 3> setting{static_cast<Selector>(x), static_cast<Selector>(y),
                                        static_cast<Selector>(z)};
  for (auto c : setting) {
    if (c != Selector::kSetting0 && c != Selector::kSetting1) throw DomainError("setting must be 0 or 1");
  }
  OutcomeDistribution p{};
  for (int o = 0; o < 8; ++o) {
    const std::array<double, 3> outcome{(o & 4) ? -1.0 : 1.0, (o & 2) ? -1.0 : 1.0,
                                        (o & 1) ? -1.0 : 1.0};
    double acc = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
      PartySelectors sel{Selector::kAbsent, Selector::kAbsent, Selector::kAbsent};
      double sign = 1.0;
      for (std::size_t j = 0; j < 3; ++j) {
        if (mask & (4 >> j)) {
          sel[j] = setting[j];
          sign *= outcome[j];
        }
      }
      acc += sign * t[sel];
    }
    p[static_cast<std::size_t>(o)] = acc / 8.0;
    if (p[static_cast<std::size_t>(o)] < -1e-12) {
      throw ConsistencyError("correlator table implies a negative probability");
    }
  }
  return p;
}

Behaviour behaviour(const CorrelatorTable& t) {
  Behaviour b{};
  for (int s = 0; s < 8; ++s) {
    b[static_cast<std::size_t>(s)] = correlators_to_probabilities(t, (s >> 2) & 1, (s >> 1) & 1, s & 1);
  }
  return b;
}

CorrelatorTable probabilities_to_correlators(const Behaviour& p) {
  CorrelatorTable t;
  for (std::size_t i = 0; i < 26; ++i) {
    const auto sel = selectors_from_index(i);
    int s = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (sel[j] == Selector::kSetting1) s |= 4 >> j;
    }
    double acc = 0.0;
    for (int o = 0; o < 8; ++o) {
      double sign = 1.0;
      for (std::size_t j = 0; j < 3; ++j) {
        if (sel[j] != Selector::kAbsent && (o & (4 >> j))) sign = -sign;
      }
      acc += sign * p[static_cast<std::size_t>(s)][static_cast<std::size_t>(o)];
    }
    t.set(sel, acc);
  }
  return t;
}

double evaluate(const BellExpression& e, const CorrelatorTable& t) {
  double total = 0.0;
  for (const auto& term : e.terms) total += term.coefficient * t[term.parties];
  return total;
}

double evaluate(const BellExpression& e, const CovarianceMatrix& cm, const MeasurementSettings& s) {
  const SubsetEvaluators ev(cm);
  double total = 0.0;
  for (const auto& term : e.terms) total += term.coefficient * ev.correlator(term.parties, s);
  return total;
}

MaximizationResult maximize_expression(const BellExpression& e, const CovarianceMatrix& cm,
                                       const OptimizerOptions& opts) {
  const SubsetEvaluators ev(cm);
  auto value_at = [&](const MeasurementSettings& s) {
    double total = 0.0;
    for (const auto& term : e.terms) total += term.coefficient * ev.correlator(term.parties, s);
    return std::abs(total);
  };
  const Objective restricted = [&](std::span<const double> p) {
    return value_at(MeasurementSettings::momentum_antisymmetric(p));
  };
  const std::vector<std::vector<double>> origin3{{0.0, 0.0, 0.0}};
  const auto pre = maximize(restricted, 3, opts, origin3);

  const Objective full = [&](std::span<const double> x) {
    return value_at(MeasurementSettings::from_flat(x));
  };
  const auto embedded = MeasurementSettings::momentum_antisymmetric(pre.point).flat();
  const std::vector<std::vector<double>> seeds{std::vector<double>(12, 0.0),
                                               {embedded.begin(), embedded.end()}};
  const auto r = maximize(full, 12, opts, seeds);
  return {r.value, MeasurementSettings::from_flat(r.point), r.evaluations + pre.evaluations,
          r.converged};
}

}  // namespace cvnl
