// SPDX-License-Identifier: Apache-2.0
//
// tqc - tensor-notation quantum circuit simulator.
//
// Subcommands: run, compare, analyze-state, analyze-gate, viz, teleport,
// opcount-table. Everything prints to stdout (or --out) and is deterministic
// given the input bytes, flags and seed. Exit codes: 0 success, 2 unusable
// input (missing file, parse error), 3 runtime failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "tensorqc/circuit.hpp"
#include "tensorqc/matrix.hpp"
#include "tensorqc/measurement.hpp"
#include "tensorqc/opcount.hpp"
#include "tensorqc/oracle_kron.hpp"
#include "tensorqc/rank_analysis.hpp"
#include "tensorqc/tensor_state.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitRuntime = 3;

struct Output {
  std::string path;  // empty = stdout
  std::ostringstream buf;

  int flush() {
    if (path.empty()) {
      std::cout << buf.str();
      return 0;
    }
    std::ofstream f(path);
    if (!f) {
      std::cerr << "error: cannot write " << path << "\n";
      return kExitRuntime;
    }
    f << buf.str();
    return 0;
  }
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int load_circuit(const std::string& path, tqc::Circuit& out) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitParse;
  }
  const tqc::ParseResult parsed = tqc::parse_circuit(*text);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics)
      std::cerr << path << ":" << d.line << ":" << d.column << ": error ["
                << tqc::diag_code_name(d.code) << "] " << d.message << "\n";
    return kExitParse;
  }
  out = *parsed.circuit;
  return 0;
}

int load_state(const std::string& path, std::optional<tqc::TensorState>& out) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitParse;
  }
  try {
    out = tqc::state_from_json(*text);
  } catch (const std::exception& e) {
    std::cerr << "error: bad state file: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}

// Gate file: {"n": 2, "matrix": [[[re,im], ...], ...]} with 2^n rows.
int load_gate(const std::string& path, std::optional<tqc::CMat>& out) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitParse;
  }
  try {
    const auto j = nlohmann::json::parse(*text);
    const int n = j.at("n").get<int>();
    const int d = 1 << n;
    tqc::CMat m(d, d);
    const auto& rows = j.at("matrix");
    if (static_cast<int>(rows.size()) != d) throw std::invalid_argument("row count");
    for (int r = 0; r < d; ++r) {
      if (static_cast<int>(rows[r].size()) != d) throw std::invalid_argument("col count");
      for (int c = 0; c < d; ++c)
        m.at(r, c) = tqc::cplx(rows[r][c][0].get<double>(), rows[r][c][1].get<double>());
    }
    out = std::move(m);
  } catch (const std::exception& e) {
    std::cerr << "error: bad gate file: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}

std::string viz_dot(const tqc::TensorState& s) {
  const int n = s.num_qubits();
  std::ostringstream os;
  os << "graph state {\n  node [shape=circle fontsize=10];\n";
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::string bits;
    for (int q = 1; q <= n; ++q) bits += static_cast<char>('0' + tqc::qubit_bit(i, n, q));
    os << "  \"" << bits << "\"";
    if (std::abs(s.amp(i)) > tqc::kVizAmpTol)
      os << " [style=filled fillcolor=gray75 penwidth=2]";
    os << ";\n";
  }
  // Hypercube edges: indices differing in exactly one bit, each drawn once.
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (int q = 1; q <= n; ++q) {
      if (tqc::qubit_bit(i, n, q) != 0) continue;
      const std::size_t j = i | (std::size_t{1} << (n - q));
      std::string bi, bj;
      for (int k = 1; k <= n; ++k) {
        bi += static_cast<char>('0' + tqc::qubit_bit(i, n, k));
        bj += static_cast<char>('0' + tqc::qubit_bit(j, n, k));
      }
      os << "  \"" << bi << "\" -- \"" << bj << "\";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor-notation quantum circuit simulator"};
  app.require_subcommand(1);

  std::string file, out_path;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  int n_max = 8;
  double a_re = 1.0, a_im = 0.0, b_re = 0.0, b_im = 0.0;

  auto* run = app.add_subcommand("run", "parse and execute a circuit, tracing each step");
  run->add_option("file", file)->required();
  run->add_option("--seed", seed);
  run->add_option("--shots", shots);
  run->add_option("--out", out_path);

  auto* cmp = app.add_subcommand("compare", "run the tensor engine against the dense oracle");
  cmp->add_option("file", file)->required();
  cmp->add_option("--seed", seed);
  cmp->add_option("--out", out_path);

  auto* ast = app.add_subcommand("analyze-state", "bipartition ranks and 3-qubit class");
  ast->add_option("file", file)->required();
  ast->add_option("--out", out_path);

  auto* agt = app.add_subcommand("analyze-gate", "realignment rank and operator Schmidt terms");
  agt->add_option("file", file)->required();
  agt->add_option("--out", out_path);

  auto* viz = app.add_subcommand("viz", "DOT hypercube drawing of a state");
  viz->add_option("file", file)->required();
  viz->add_option("--out", out_path);

  auto* tel = app.add_subcommand("teleport", "built-in teleportation demo");
  tel->add_option("--alpha-re", a_re);
  tel->add_option("--alpha-im", a_im);
  tel->add_option("--beta-re", b_re);
  tel->add_option("--beta-im", b_im);
  tel->add_option("--seed", seed);
  tel->add_option("--out", out_path);

  auto* oct = app.add_subcommand("opcount-table", "predicted vs measured operation counts");
  oct->add_option("--n-max", n_max)->check(CLI::Range(1, 12));
  oct->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);
  Output out;
  out.path = out_path;

  try {
    if (run->parsed()) {
      tqc::Circuit c;
      if (int rc = load_circuit(file, c)) return rc;
      const auto steps = tqc::run_traced(c, c.initial_state(), {seed, std::nullopt, true});
      out.buf << tqc::trace_to_json_lines(steps);
      if (shots > 0) {
        const auto& fin = steps.back().state;
        if (!fin) {
          std::cerr << "error: no unmeasured qubits left to sample\n";
          return kExitRuntime;
        }
        out.buf << tqc::histogram_json(shots, tqc::sample_counts(*fin, shots, seed)) << "\n";
      }
      return out.flush();
    }

    if (cmp->parsed()) {
      tqc::Circuit c;
      if (int rc = load_circuit(file, c)) return rc;
      const auto report = tqc::run_compare(c, c.initial_state(), {seed, std::nullopt, true});
      out.buf << tqc::compare_report_json(report) << "\n";
      return out.flush();
    }

    if (ast->parsed()) {
      std::optional<tqc::TensorState> s;
      if (int rc = load_state(file, s)) return rc;
      out.buf << tqc::state_report_json(*s) << "\n";
      return out.flush();
    }

    if (agt->parsed()) {
      std::optional<tqc::CMat> m;
      if (int rc = load_gate(file, m)) return rc;
      out.buf << tqc::gate_report_json(*m) << "\n";
      return out.flush();
    }

    if (viz->parsed()) {
      std::optional<tqc::TensorState> s;
      if (int rc = load_state(file, s)) return rc;
      if (s->num_qubits() > 6) {
        std::cerr << "error: viz supports at most 6 qubits\n";
        return kExitRuntime;
      }
      out.buf << viz_dot(*s);
      return out.flush();
    }

    if (tel->parsed()) {
      const auto report =
          tqc::teleport_report(tqc::cplx(a_re, a_im), tqc::cplx(b_re, b_im), seed);
      out.buf << tqc::teleport_report_text(report);
      out.buf << tqc::trace_to_json_lines(report.trace);
      return out.flush();
    }

    if (oct->parsed()) {
      out.buf << tqc::opcount_csv(n_max);
      return out.flush();
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
