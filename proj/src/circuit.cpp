// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "tensorqc/oracle_kron.hpp"
#include "tensorqc/rank_analysis.hpp"

namespace tqc {

// ---------------------------------------------------------------------------
// IR helpers
// ---------------------------------------------------------------------------

TensorState Circuit::initial_state() const {
  if (n < 1) throw std::invalid_argument("circuit width must be >= 1");
  std::vector<std::pair<cplx, cplx>> amps(n, {cplx{1.0}, cplx{}});
  for (const Instruction& ins : instructions)
    if (const auto* p = std::get_if<PrepInstr>(&ins)) amps[p->qubit - 1] = {p->a0, p->a1};
  TensorState s(1, {amps[0].first, amps[0].second});
  for (int q = 2; q <= n; ++q)
    s = tensor_product(s, TensorState(1, {amps[q - 1].first, amps[q - 1].second}));
  s.normalize();
  return s;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

bool parse_int(const std::string& s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [p, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && p == end;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool valid_bit_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ParseResult run() {
    std::istringstream in(text_);
    std::string raw;
    while (std::getline(in, raw)) lines_.push_back(raw);
    pos_ = 0;
    parse_all();
    ParseResult r;
    r.diagnostics = std::move(diags_);
    if (r.diagnostics.empty()) r.circuit = std::move(circuit_);
    return r;
  }

 private:
  void error(DiagCode code, int line, int column, std::string msg) {
    diags_.push_back({code, line, column, std::move(msg)});
  }

  bool next_line(std::vector<Token>& toks) {
    while (pos_ < lines_.size()) {
      toks = tokenize(lines_[pos_]);
      ++pos_;
      if (!toks.empty()) return true;
    }
    return false;
  }

  int cur_line() const { return static_cast<int>(pos_); }

  bool check_qubit(const Token& t, int& q) {
    if (!parse_int(t.text, q)) {
      error(DiagCode::MalformedLine, cur_line(), t.column, "expected a qubit index");
      return false;
    }
    if (q < 1 || q > circuit_.n) {
      error(DiagCode::QubitOutOfRange, cur_line(), t.column,
            "qubit " + t.text + " out of range");
      return false;
    }
    return true;
  }

  // gate name + qubit + optional rotation angle, shared by local and `if`.
  bool parse_gate_qubit(const std::vector<Token>& toks, std::size_t at,
                        std::string& gate, int& qubit, std::vector<double>& params) {
    gate = lower(toks[at].text);
    const int arity = gate_param_count(gate);
    if (arity < 0) {
      error(DiagCode::UnknownGate, cur_line(), toks[at].column,
            "unknown gate '" + toks[at].text + "'");
      return false;
    }
    if (toks.size() != at + 2 + static_cast<std::size_t>(arity)) {
      error(DiagCode::MalformedLine, cur_line(), toks[at].column,
            "gate '" + gate + "' expects a qubit" +
                (arity ? " and an angle" : std::string{}));
      return false;
    }
    if (!check_qubit(toks[at + 1], qubit)) return false;
    params.clear();
    for (int k = 0; k < arity; ++k) {
      double v;
      if (!parse_double(toks[at + 2 + k].text, v)) {
        error(DiagCode::MalformedLine, cur_line(), toks[at + 2 + k].column,
              "expected a numeric angle");
        return false;
      }
      params.push_back(v);
    }
    return true;
  }

  // "c[2=1,3=0]" -> control list.
  bool parse_control_spec(const Token& t, std::vector<ControlBit>& controls) {
    const std::string& s = t.text;
    if (s.size() < 4 || s.back() != ']') {
      error(DiagCode::MalformedControl, cur_line(), t.column, "malformed control spec");
      return false;
    }
    controls.clear();
    std::set<int> seen;
    std::size_t i = 2;
    while (i < s.size() - 1) {
      std::size_t eq = s.find('=', i);
      if (eq == std::string::npos || eq >= s.size() - 1) {
        error(DiagCode::MalformedControl, cur_line(), t.column, "malformed control spec");
        return false;
      }
      std::size_t comma = s.find(',', eq);
      if (comma == std::string::npos) comma = s.size() - 1;
      int q, b;
      if (!parse_int(s.substr(i, eq - i), q) ||
          !parse_int(s.substr(eq + 1, comma - eq - 1), b) || (b != 0 && b != 1)) {
        error(DiagCode::MalformedControl, cur_line(), t.column, "malformed control spec");
        return false;
      }
      if (q < 1 || q > circuit_.n) {
        error(DiagCode::QubitOutOfRange, cur_line(), t.column,
              "qubit " + std::to_string(q) + " out of range");
        return false;
      }
      if (!seen.insert(q).second) {
        error(DiagCode::MalformedControl, cur_line(), t.column,
              "duplicate control qubit " + std::to_string(q));
        return false;
      }
      controls.push_back({q, b});
      i = comma + 1;
    }
    if (controls.empty()) {
      error(DiagCode::MalformedControl, cur_line(), t.column, "empty control spec");
      return false;
    }
    return true;
  }

  // "(re,im)" coefficient token.
  bool parse_coeff(const Token& t, cplx& out) {
    const std::string& s = t.text;
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') return false;
    const std::size_t comma = s.find(',');
    if (comma == std::string::npos) return false;
    double re, im;
    if (!parse_double(s.substr(1, comma - 1), re) ||
        !parse_double(s.substr(comma + 1, s.size() - comma - 2), im))
      return false;
    out = {re, im};
    return true;
  }

  void parse_term_block(const std::vector<Token>& header) {
    int r = 0;
    const std::string& arg = header[1].text;
    if (header.size() != 2 || arg.rfind("r=", 0) != 0 || !parse_int(arg.substr(2), r) ||
        r < 1) {
      error(DiagCode::BadTermBlock, cur_line(), header[0].column,
            "term header must be 'term r=<count>'");
      return;
    }
    if (static_cast<std::size_t>(r) > (std::size_t{1} << circuit_.n)) {
      error(DiagCode::BadTermBlock, cur_line(), header[0].column,
            "term count exceeds 2^n");
      return;
    }
    TermSumInstr instr;
    for (int k = 0; k < r; ++k) {
      std::vector<Token> toks;
      if (!next_line(toks)) {
        error(DiagCode::BadTermBlock, cur_line(), 1, "unterminated term block");
        return;
      }
      TermLine term;
      std::size_t at = 0;
      if (parse_coeff(toks[0], term.coeff)) at = 1;
      if (toks.size() - at != static_cast<std::size_t>(circuit_.n)) {
        error(DiagCode::BadTermBlock, cur_line(), toks[0].column,
              "term line must list one factor per qubit");
        return;
      }
      for (std::size_t f = at; f < toks.size(); ++f) {
        const std::string name = lower(toks[f].text);
        if (!gate_library_ok(name)) {
          error(DiagCode::UnknownGate, cur_line(), toks[f].column,
                "unknown term factor '" + toks[f].text + "'");
          return;
        }
        term.factors.push_back(name);
      }
      instr.terms.push_back(std::move(term));
    }
    std::vector<Token> toks;
    if (!next_line(toks) || toks.size() != 1 || toks[0].text != "end") {
      error(DiagCode::BadTermBlock, cur_line(), 1, "term block must close with 'end'");
      return;
    }
    circuit_.instructions.emplace_back(std::move(instr));
    seen_gate_ = true;
  }

  // Term factors allow names and rx(0.5) style calls.
  static bool gate_library_ok(const std::string& name) {
    try {
      gate_library(name);
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }

  void parse_all() {
    std::vector<Token> toks;
    if (!next_line(toks)) {
      error(DiagCode::BadHeader, 1, 1, "missing 'qubits N' header");
      return;
    }
    int n = 0;
    if (toks[0].text != "qubits" || toks.size() != 2 || !parse_int(toks[1].text, n) ||
        n < 1 || n > 20) {
      error(DiagCode::BadHeader, cur_line(), toks[0].column,
            "first line must be 'qubits N' with 1 <= N <= 20");
      return;
    }
    circuit_.n = n;

    while (next_line(toks)) {
      const std::string head = lower(toks[0].text);

      if (head == "prep") {
        if (seen_gate_) {
          error(DiagCode::MalformedLine, cur_line(), toks[0].column,
                "prep must precede gates and measurements");
          continue;
        }
        int q;
        double v[4];
        if (toks.size() != 6 || !check_qubit(toks[1], q)) {
          if (toks.size() != 6)
            error(DiagCode::MalformedLine, cur_line(), toks[0].column,
                  "prep expects: prep <q> <a_re> <a_im> <b_re> <b_im>");
          continue;
        }
        bool ok = true;
        for (int k = 0; k < 4; ++k)
          if (!parse_double(toks[2 + k].text, v[k])) {
            error(DiagCode::MalformedLine, cur_line(), toks[2 + k].column,
                  "expected a numeric amplitude");
            ok = false;
            break;
          }
        if (!ok) continue;
        if (!prepped_.insert(q).second) {
          error(DiagCode::MalformedLine, cur_line(), toks[1].column,
                "qubit " + std::to_string(q) + " prepared twice");
          continue;
        }
        circuit_.instructions.push_back(PrepInstr{q, {v[0], v[1]}, {v[2], v[3]}});
        continue;
      }

      if (head == "measure") {
        if (toks.size() != 4 || toks[2].text != "->" || !valid_bit_name(toks[3].text)) {
          error(DiagCode::MalformedLine, cur_line(), toks[0].column,
                "measure expects: measure <q> -> <name>");
          continue;
        }
        int q;
        if (!check_qubit(toks[1], q)) continue;
        written_bits_.insert(toks[3].text);
        circuit_.instructions.push_back(MeasureInstr{q, toks[3].text});
        seen_gate_ = true;
        continue;
      }

      if (head == "if") {
        if (toks.size() < 4) {
          error(DiagCode::MalformedLine, cur_line(), toks[0].column,
                "if expects: if <name> <gate> <q>");
          continue;
        }
        if (!written_bits_.count(toks[1].text)) {
          error(DiagCode::ReadBeforeWrite, cur_line(), toks[1].column,
                "classical bit '" + toks[1].text + "' read before it is written");
          continue;
        }
        IfInstr instr;
        instr.bit = toks[1].text;
        if (!parse_gate_qubit(toks, 2, instr.gate, instr.qubit, instr.params)) continue;
        circuit_.instructions.emplace_back(std::move(instr));
        seen_gate_ = true;
        continue;
      }

      if (head == "term") {
        if (toks.size() < 2) {
          error(DiagCode::BadTermBlock, cur_line(), toks[0].column,
                "term header must be 'term r=<count>'");
          continue;
        }
        parse_term_block(toks);
        continue;
      }

      if (head == "cx" || head == "cz") {
        int c, t;
        if (toks.size() != 3 || !check_qubit(toks[1], c) || !check_qubit(toks[2], t)) {
          if (toks.size() != 3)
            error(DiagCode::MalformedLine, cur_line(), toks[0].column,
                  head + " expects: " + head + " <control> <target>");
          continue;
        }
        if (c == t) {
          error(DiagCode::MalformedControl, cur_line(), toks[1].column,
                "control equals target");
          continue;
        }
        circuit_.instructions.push_back(
            ControlledInstr{{{c, 1}}, head == "cx" ? "x" : "z", {}, t});
        seen_gate_ = true;
        continue;
      }

      if (head.rfind("c[", 0) == 0) {
        ControlledInstr instr;
        if (!parse_control_spec(toks[0], instr.controls)) continue;
        if (toks.size() < 3) {
          error(DiagCode::MalformedLine, cur_line(), toks[0].column,
                "controlled gate expects: c[...] <gate> <target>");
          continue;
        }
        if (!parse_gate_qubit(toks, 1, instr.gate, instr.target, instr.params)) continue;
        bool clash = false;
        for (const auto& cb : instr.controls)
          if (cb.qubit == instr.target) clash = true;
        if (clash) {
          error(DiagCode::MalformedControl, cur_line(), toks[0].column,
                "target appears among the controls");
          continue;
        }
        circuit_.instructions.emplace_back(std::move(instr));
        seen_gate_ = true;
        continue;
      }

      // Plain local gate.
      {
        LocalInstr instr;
        if (!parse_gate_qubit(toks, 0, instr.gate, instr.qubit, instr.params)) continue;
        circuit_.instructions.emplace_back(std::move(instr));
        seen_gate_ = true;
      }
    }
  }

  const std::string& text_;
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
  Circuit circuit_;
  std::vector<Diagnostic> diags_;
  bool seen_gate_ = false;
  std::set<int> prepped_;
  std::set<std::string> written_bits_;
};

std::string fmt_d(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string instr_text(const Instruction& ins) {
  std::ostringstream os;
  if (const auto* p = std::get_if<PrepInstr>(&ins)) {
    os << "prep " << p->qubit << ' ' << fmt_d(p->a0.real()) << ' ' << fmt_d(p->a0.imag())
       << ' ' << fmt_d(p->a1.real()) << ' ' << fmt_d(p->a1.imag());
  } else if (const auto* l = std::get_if<LocalInstr>(&ins)) {
    os << l->gate << ' ' << l->qubit;
    for (double v : l->params) os << ' ' << fmt_d(v);
  } else if (const auto* c = std::get_if<ControlledInstr>(&ins)) {
    os << "c[";
    for (std::size_t i = 0; i < c->controls.size(); ++i) {
      if (i) os << ',';
      os << c->controls[i].qubit << '=' << c->controls[i].bit;
    }
    os << "] " << c->gate << ' ' << c->target;
    for (double v : c->params) os << ' ' << fmt_d(v);
  } else if (const auto* t = std::get_if<TermSumInstr>(&ins)) {
    os << "term r=" << t->terms.size();
    for (const TermLine& line : t->terms) {
      os << "\n(" << fmt_d(line.coeff.real()) << ',' << fmt_d(line.coeff.imag()) << ')';
      for (const std::string& f : line.factors) os << ' ' << f;
    }
    os << "\nend";
  } else if (const auto* m = std::get_if<MeasureInstr>(&ins)) {
    os << "measure " << m->qubit << " -> " << m->bit;
  } else if (const auto* f = std::get_if<IfInstr>(&ins)) {
    os << "if " << f->bit << ' ' << f->gate << ' ' << f->qubit;
    for (double v : f->params) os << ' ' << fmt_d(v);
  }
  return os.str();
}

}  // namespace

ParseResult parse_circuit(const std::string& text) { return Parser(text).run(); }

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n << '\n';
  for (const Instruction& ins : c.instructions) os << instr_text(ins) << '\n';
  return os.str();
}

std::string diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::BadHeader: return "bad-header";
    case DiagCode::MalformedLine: return "malformed-line";
    case DiagCode::UnknownGate: return "unknown-gate";
    case DiagCode::QubitOutOfRange: return "qubit-out-of-range";
    case DiagCode::MalformedControl: return "malformed-control";
    case DiagCode::ReadBeforeWrite: return "read-before-write";
    case DiagCode::BadTermBlock: return "bad-term-block";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace {

// Register view while measurements shrink the tensor: original qubit q lives
// on axis axis[q-1] of the current state (0 once measured).
struct Exec {
  std::optional<TensorState> state;
  std::vector<int> axis;
  std::vector<int> measured_bits;
  std::map<std::string, int> bits;
  OpCounter ops;
  int active = 0;
  cplx terminal_amp{1.0};  // leftover scalar once every qubit is measured

  explicit Exec(const TensorState& initial, int n) : state(initial), active(n) {
    axis.resize(n);
    for (int q = 1; q <= n; ++q) axis[q - 1] = q;
    measured_bits.assign(n, -1);
  }

  int require_axis(int qubit) const {
    const int a = axis[qubit - 1];
    if (a == 0) throw std::runtime_error("gate on already measured qubit");
    return a;
  }
};

MeasureRecord exec_measure(Exec& ex, const MeasureInstr& m, SplitMix64& rng,
                           const std::optional<std::vector<int>>& forced,
                           std::size_t& forced_at) {
  const int a = ex.require_axis(m.qubit);
  MeasureOutcome out;
  if (forced) {
    if (forced_at >= forced->size())
      throw std::runtime_error("not enough forced measurement outcomes");
    out = measure_forced(*ex.state, a, (*forced)[forced_at++]);
  } else {
    out = measure(*ex.state, a, rng.next_double());
  }
  ex.bits[m.bit] = out.bit;
  ex.measured_bits[m.qubit - 1] = out.bit;
  ex.axis[m.qubit - 1] = 0;
  for (int& ax : ex.axis)
    if (ax > a) --ax;
  --ex.active;
  if (out.post_state) {
    ex.state = std::move(*out.post_state);
  } else {
    ex.terminal_amp = ex.state->amp(static_cast<std::size_t>(out.bit)) /
                      std::sqrt(out.probability);
    ex.state.reset();
  }
  return {m.qubit, out.bit, out.probability};
}

// Gate-level op on the current (possibly collapsed) register, axes remapped.
std::optional<GateOp> exec_instruction(Exec& ex, const Instruction& ins) {
  if (const auto* l = std::get_if<LocalInstr>(&ins)) {
    const AppliedGate g{ex.require_axis(l->qubit), resolve_gate(l->gate, l->params)};
    apply_single_inplace(*ex.state, g.qubit, g.gate, &ex.ops);
    return GateOp{g};
  }
  if (const auto* c = std::get_if<ControlledInstr>(&ins)) {
    QuasiMultilinearGate g;
    g.n = ex.active;
    for (const ControlBit& cb : c->controls)
      g.controls.push_back({ex.require_axis(cb.qubit), cb.bit});
    g.target = ex.require_axis(c->target);
    g.gate = resolve_gate(c->gate, c->params);
    apply_controlled_inplace(*ex.state, g, &ex.ops);
    return GateOp{g};
  }
  if (const auto* t = std::get_if<TermSumInstr>(&ins)) {
    if (ex.active == 0) throw std::runtime_error("term sum on fully measured register");
    MultilinearGate g;
    for (const TermLine& line : t->terms) {
      GateTerm term;
      term.factors.resize(ex.active, gate::i());
      for (std::size_t q = 0; q < line.factors.size(); ++q) {
        const SingleQubitGate f = gate_library(line.factors[q]);
        const int a = ex.axis[q];
        if (a == 0) {
          // Collapsed axes may only carry identity factors.
          if (std::abs(f.g00 - 1.0) > 0 || std::abs(f.g11 - 1.0) > 0 ||
              std::abs(f.g01) > 0 || std::abs(f.g10) > 0)
            throw std::runtime_error("term factor on already measured qubit");
          continue;
        }
        term.factors[a - 1] = f;
      }
      // The written coefficient rides on the first factor.
      if (line.coeff != cplx{1.0}) term.factors[0] = term.factors[0].scaled(line.coeff);
      g.terms.push_back(std::move(term));
    }
    ex.state = apply_multilinear(*ex.state, g, &ex.ops);
    return GateOp{g};
  }
  if (const auto* f = std::get_if<IfInstr>(&ins)) {
    auto it = ex.bits.find(f->bit);
    if (it == ex.bits.end()) throw std::runtime_error("classical bit read before write");
    if (it->second != 1) return std::nullopt;
    const AppliedGate g{ex.require_axis(f->qubit), resolve_gate(f->gate, f->params)};
    apply_single_inplace(*ex.state, g.qubit, g.gate, &ex.ops);
    return GateOp{g};
  }
  return std::nullopt;  // PrepInstr: folded into the initial state
}

void fill_ranks(TraceStep& step, bool with_ranks) {
  if (!step.state) {
    step.max_rank = 0;
    return;
  }
  const int order = step.state->num_qubits();
  if (order < 2) {
    step.max_rank = 1;
    return;
  }
  if (!with_ranks) return;
  for (int k = 1; k <= order; ++k)
    step.ranks.push_back(schmidt_rank(*step.state, Bipartition::of(order, {k})));
  if (order <= 8) {
    step.max_rank = max_unfolding_rank(*step.state);
  } else {
    step.max_rank = *std::max_element(step.ranks.begin(), step.ranks.end());
  }
}

}  // namespace

std::vector<TraceStep> run_traced(const Circuit& c, const TensorState& initial,
                                  const RunOptions& opts) {
  if (initial.num_qubits() != c.n)
    throw std::invalid_argument("initial state width does not match circuit");
  Exec ex(initial, c.n);
  SplitMix64 rng(opts.seed);
  std::size_t forced_at = 0;

  std::vector<TraceStep> steps;
  {
    TraceStep init;
    init.instr = "init";
    init.state = *ex.state;
    fill_ranks(init, opts.with_ranks);
    steps.push_back(std::move(init));
  }
  for (const Instruction& ins : c.instructions) {
    if (std::holds_alternative<PrepInstr>(ins)) continue;
    TraceStep step;
    step.instr = instr_text(ins);
    if (const auto* m = std::get_if<MeasureInstr>(&ins))
      step.measured = exec_measure(ex, *m, rng, opts.forced_outcomes, forced_at);
    else
      exec_instruction(ex, ins);
    step.state = ex.state;
    step.ops = ex.ops;
    step.bits = ex.bits;
    fill_ranks(step, opts.with_ranks);
    steps.push_back(std::move(step));
  }
  return steps;
}

std::string trace_to_json_lines(const std::vector<TraceStep>& steps) {
  std::ostringstream os;
  for (const TraceStep& s : steps) {
    nlohmann::ordered_json j;
    j["instr"] = s.instr;
    if (s.state)
      j["state"] = nlohmann::ordered_json::parse(state_to_json(*s.state));
    else
      j["state"] = nullptr;
    j["ranks"] = s.ranks;
    j["max_rank"] = s.max_rank;
    j["ops"] = {{"mults", s.ops.mults}, {"adds", s.ops.adds}};
    if (s.measured)
      j["measured"] = {{"qubit", s.measured->qubit},
                       {"bit", s.measured->bit},
                       {"probability", s.measured->probability}};
    else
      j["measured"] = nullptr;
    j["bits"] = s.bits;
    os << j.dump() << '\n';
  }
  return os.str();
}

CompareReport run_compare(const Circuit& c, const TensorState& initial,
                          const RunOptions& opts) {
  if (c.n > kOracleMaxQubits)
    throw std::invalid_argument("oracle supports at most 12 qubits");
  if (initial.num_qubits() != c.n)
    throw std::invalid_argument("initial state width does not match circuit");

  Exec ex(initial, c.n);
  SplitMix64 rng(opts.seed);
  std::size_t forced_at = 0;

  CompareReport report;
  KronState oracle = to_kron_vector(initial);

  auto deviation = [&]() {
    // Embed the collapsed tensor back into the 2^n space for comparison.
    const std::size_t dim = std::size_t{1} << c.n;
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      bool match = true;
      std::size_t sub = 0;
      for (int q = 1; q <= c.n; ++q) {
        const int bit = qubit_bit(i, c.n, q);
        if (ex.axis[q - 1] == 0) {
          if (bit != ex.measured_bits[q - 1]) {
            match = false;
            break;
          }
        } else {
          sub = (sub << 1) | static_cast<std::size_t>(bit);
        }
      }
      cplx t{};
      if (match) t = ex.state ? ex.state->amp(sub) : ex.terminal_amp;
      worst = std::max(worst, std::abs(t - oracle[i]));
    }
    report.max_deviation = std::max(report.max_deviation, worst);
  };

  for (const Instruction& ins : c.instructions) {
    if (std::holds_alternative<PrepInstr>(ins)) continue;
    if (const auto* m = std::get_if<MeasureInstr>(&ins)) {
      const MeasureRecord rec = exec_measure(ex, *m, rng, opts.forced_outcomes, forced_at);
      report.outcomes.push_back(rec.bit);
      oracle = kron_collapse(oracle, c.n, m->qubit, rec.bit);
      deviation();
      continue;
    }
    // Oracle side re-runs the instruction at full width with original
    // indices; collapsed qubits hold definite bits so identities match up.
    const std::optional<GateOp> applied = exec_instruction(ex, ins);
    GateOp full_op = [&]() -> GateOp {
      if (const auto* l = std::get_if<LocalInstr>(&ins))
        return AppliedGate{l->qubit, resolve_gate(l->gate, l->params)};
      if (const auto* q = std::get_if<ControlledInstr>(&ins)) {
        QuasiMultilinearGate g;
        g.n = c.n;
        g.controls = q->controls;
        g.target = q->target;
        g.gate = resolve_gate(q->gate, q->params);
        return g;
      }
      if (const auto* t = std::get_if<TermSumInstr>(&ins)) {
        MultilinearGate g;
        for (const TermLine& line : t->terms) {
          GateTerm term;
          for (const std::string& f : line.factors) term.factors.push_back(gate_library(f));
          term.factors[0] = term.factors[0].scaled(line.coeff);
          g.terms.push_back(std::move(term));
        }
        return g;
      }
      const auto& f = std::get<IfInstr>(ins);
      return AppliedGate{f.qubit, resolve_gate(f.gate, f.params)};
    }();
    if (std::holds_alternative<IfInstr>(ins) && !applied) {
      deviation();  // branch not taken; both sides idle
      continue;
    }
    oracle = apply_oracle(oracle, build_gate_matrix(full_op, c.n), &report.oracle_ops);
    ++report.gate_steps;
    deviation();
  }
  report.tensor_ops = ex.ops;
  return report;
}

std::string compare_report_json(const CompareReport& r) {
  nlohmann::ordered_json j;
  j["max_deviation"] = r.max_deviation;
  j["gate_steps"] = r.gate_steps;
  j["tensor_ops"] = {{"mults", r.tensor_ops.mults}, {"adds", r.tensor_ops.adds}};
  j["oracle_ops"] = {{"mults", r.oracle_ops.mults}, {"adds", r.oracle_ops.adds}};
  j["outcomes"] = r.outcomes;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Teleportation
// ---------------------------------------------------------------------------

TeleportSetup teleportation(cplx alpha, cplx beta) {
  const double nrm = std::norm(alpha) + std::norm(beta);
  if (std::abs(nrm - 1.0) > kNormTol)
    throw std::invalid_argument("|alpha|^2 + |beta|^2 must equal 1");

  Circuit c;
  c.n = 3;
  c.instructions = {
      PrepInstr{1, alpha, beta},
      LocalInstr{2, "h", {}},
      ControlledInstr{{{2, 1}}, "x", {}, 3},
      ControlledInstr{{{1, 1}}, "x", {}, 2},
      LocalInstr{1, "h", {}},
      MeasureInstr{1, "m1"},
      MeasureInstr{2, "m2"},
      IfInstr{"m2", "x", {}, 3},
      IfInstr{"m1", "z", {}, 3},
  };
  TensorState initial = c.initial_state();
  return {std::move(c), std::move(initial), TensorState(1, {alpha, beta})};
}

TeleportReport teleport_report(cplx alpha, cplx beta, std::uint64_t seed) {
  const TeleportSetup setup = teleportation(alpha, beta);
  TeleportReport report;
  report.trace = run_traced(setup.circuit, setup.initial, {seed, std::nullopt, true});
  for (int i = 0; i < 5; ++i) report.rank_trace.push_back(report.trace[i].max_rank);

  for (int b1 = 0; b1 <= 1; ++b1)
    for (int b2 = 0; b2 <= 1; ++b2) {
      RunOptions opts;
      opts.forced_outcomes = std::vector<int>{b1, b2};
      opts.with_ranks = false;
      const auto steps = run_traced(setup.circuit, setup.initial, opts);
      TeleportBranch br;
      br.bit1 = b1;
      br.bit2 = b2;
      br.prob = steps[5].measured->probability * steps[6].measured->probability;
      br.pre_correction = *steps[6].state;
      br.final_state = *steps.back().state;
      br.fid = fidelity(setup.message, br.final_state);
      report.branches.push_back(std::move(br));
    }
  return report;
}

std::string teleport_report_text(const TeleportReport& r) {
  std::ostringstream os;
  os << "teleportation trace (" << r.trace.size() << " steps)\n";
  for (std::size_t i = 0; i < 5; ++i)
    os << "  step " << i << "  " << r.trace[i].instr << "  max unfolding rank "
       << r.trace[i].max_rank << '\n';
  os << "unfolding rank trace: ";
  for (std::size_t i = 0; i < r.rank_trace.size(); ++i)
    os << (i ? "," : "") << r.rank_trace[i];
  os << "\nterm-count sequence:  1,1,2,4,4\n"
     << "  note: the term-count sequence tallies summands of one written\n"
     << "  decomposition of each snapshot; it is not an unfolding rank and a\n"
     << "  2x2x2 tensor never has unfolding rank above 2.\n";
  for (const TeleportBranch& b : r.branches) {
    os << "branch m1=" << b.bit1 << " m2=" << b.bit2 << "  p=" << b.prob
       << "  fidelity=" << fmt_d(b.fid) << '\n';
  }
  return os.str();
}

}  // namespace tqc
