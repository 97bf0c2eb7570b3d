// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tensorqc/gates.hpp"
#include "tensorqc/measurement.hpp"
#include "tensorqc/opcount.hpp"
#include "tensorqc/tensor_state.hpp"

namespace tqc {

// ---------------------------------------------------------------------------
// Intermediate representation
// ---------------------------------------------------------------------------

/// Initial-state pseudo-instruction: qubit starts in a0|0> + a1|1>.
struct PrepInstr {
  int qubit = 0;
  cplx a0{1.0}, a1{};
};

struct LocalInstr {
  int qubit = 0;
  std::string gate;
  std::vector<double> params;
};

struct ControlledInstr {
  std::vector<ControlBit> controls;
  std::string gate;
  std::vector<double> params;
  int target = 0;
};

struct TermLine {
  cplx coeff{1.0};
  std::vector<std::string> factors;  // n gate names
};

struct TermSumInstr {
  std::vector<TermLine> terms;
};

struct MeasureInstr {
  int qubit = 0;
  std::string bit;
};

struct IfInstr {
  std::string bit;
  std::string gate;
  std::vector<double> params;
  int qubit = 0;
};

using Instruction =
    std::variant<PrepInstr, LocalInstr, ControlledInstr, TermSumInstr, MeasureInstr, IfInstr>;

struct Circuit {
  int n = 0;
  std::vector<Instruction> instructions;

  /// Product of the prep amplitudes (|0> for unprepared qubits), normalized.
  TensorState initial_state() const;
};

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------
//
// Line oriented, `#` starts a comment:
//   qubits N
//   prep <q> <a_re> <a_im> <b_re> <b_im>
//   i|x|y|z|h|s|t <q>
//   rx|ry|rz <q> <theta>
//   c[<q>=<0|1>,...] <gate> <target> [theta]
//   cx <control> <target>            (sugar for c[<control>=1] x <target>)
//   cz <control> <target>
//   term r=<r>                       (followed by r lines and `end`)
//     (<re>,<im>) <f1> ... <fn>
//   end
//   measure <q> -> <name>
//   if <name> <gate> <q> [theta]

enum class DiagCode {
  BadHeader,
  MalformedLine,
  UnknownGate,
  QubitOutOfRange,
  MalformedControl,
  ReadBeforeWrite,
  BadTermBlock,
};

struct Diagnostic {
  DiagCode code;
  int line = 0;
  int column = 0;
  std::string message;
};

struct ParseResult {
  std::optional<Circuit> circuit;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return circuit.has_value(); }
};

/// Total parser: never throws on input text; failures come back as
/// diagnostics with line/column positions.
ParseResult parse_circuit(const std::string& text);

/// Normalized text form; parse(to_text(c)) reproduces c and re-printing is
/// a fixed point.
std::string to_text(const Circuit& c);

std::string diag_code_name(DiagCode code);

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct RunOptions {
  std::uint64_t seed = 0;
  /// When set, measurements consume these bits in order instead of sampling.
  std::optional<std::vector<int>> forced_outcomes;
  /// Compute per-bipartition ranks for snapshots (all splits when the active
  /// width is at most 8).
  bool with_ranks = true;
};

struct MeasureRecord {
  int qubit = 0;
  int bit = 0;
  double probability = 0.0;
};

struct TraceStep {
  std::string instr;                  // normalized instruction text, "init" first
  std::optional<TensorState> state;   // nullopt once every qubit is measured
  std::vector<int> ranks;             // (k|rest) Schmidt ranks of the snapshot
  int max_rank = 0;                   // over all bipartitions of the snapshot
  OpCounter ops;                      // cumulative gate work
  std::optional<MeasureRecord> measured;
  std::map<std::string, int> bits;    // classical bits written so far
};

/// Executes on the tensor engine. Prep pseudo-instructions are folded into
/// the initial snapshot; each remaining instruction appends one step.
/// Measured qubits keep their original indices for later instructions while
/// the underlying tensor drops one order per measurement.
std::vector<TraceStep> run_traced(const Circuit& c, const TensorState& initial,
                                  const RunOptions& opts = {});

/// One TraceStep per line: {"instr":...,"state":...,"ranks":[...],
/// "max_rank":...,"ops":{"mults":...,"adds":...},"measured":...,"bits":...}.
std::string trace_to_json_lines(const std::vector<TraceStep>& steps);

struct CompareReport {
  double max_deviation = 0.0;  // max elementwise |tensor - oracle| over steps
  OpCounter tensor_ops;
  OpCounter oracle_ops;
  int gate_steps = 0;
  std::vector<int> outcomes;  // measurement bits (tensor-engine draw, forced on oracle)
};

/// Runs the tensor engine and the Kronecker oracle side by side with
/// identical measurement outcomes. Refuses widths beyond the oracle guard.
CompareReport run_compare(const Circuit& c, const TensorState& initial,
                          const RunOptions& opts = {});

std::string compare_report_json(const CompareReport& r);

// ---------------------------------------------------------------------------
// Teleportation
// ---------------------------------------------------------------------------

/// The built-in three-qubit teleportation program: Bell preparation, Alice's
/// CNOT+H, two measurements, and Bob's classically controlled X/Z fixups.
/// Requires |alpha|^2 + |beta|^2 = 1 within 1e-10.
struct TeleportSetup {
  Circuit circuit;
  TensorState initial;
  TensorState message;  // the single-qubit state being sent
};
TeleportSetup teleportation(cplx alpha, cplx beta);

struct TeleportBranch {
  int bit1 = 0, bit2 = 0;
  double prob = 0.0;              // joint probability of the branch
  TensorState pre_correction{1};  // Bob's qubit before the fixups
  TensorState final_state{1};     // after the fixups
  double fid = 0.0;               // |<message|final>|
};

struct TeleportReport {
  std::vector<TraceStep> trace;        // seeded run
  std::vector<TeleportBranch> branches;  // all four forced outcomes
  std::vector<int> rank_trace;         // max unfolding rank per pre-measurement snapshot
};

TeleportReport teleport_report(cplx alpha, cplx beta, std::uint64_t seed = 0);

/// Human-readable report; includes the computed rank trace alongside the
/// term-count sequence 1,1,2,4,4 often quoted for this circuit, which counts
/// summands of a written decomposition rather than an unfolding rank.
std::string teleport_report_text(const TeleportReport& r);

}  // namespace tqc
