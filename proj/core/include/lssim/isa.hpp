#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lssim/types.hpp"

namespace lssim {

enum class Opcode : std::uint8_t { InitZ, InitX, OpH, OpS, MeasZ, MeasX, MeasZZ, MeasXX };

const char* to_string(Opcode op);

/// Second-operand sentinel: consume a magic state from any pool.
inline constexpr int kMagicOperand = -1;
inline constexpr int kNoOperand = -2;
inline constexpr int kNoRegister = -1;

/// Instruction duration in code beats. Code-cycle instructions (INIT and
/// single-qubit measurements) occupy their cell for one full beat, the
/// simulator's time quantum.
int duration_beats(Opcode op);

int operand_count(Opcode op);
bool is_measurement(Opcode op);
bool is_two_qubit(Opcode op);

struct Instruction {
    Opcode opcode = Opcode::InitZ;
    int q0 = 0;
    int q1 = kNoOperand; // qubit id, kMagicOperand, or kNoOperand
    int dest_register = kNoRegister;
    int condition = kNoRegister; // execute only once this register is reliable
    int line = 0;                // 1-based source line, 0 for synthetic programs

    bool uses_magic() const { return q1 == kMagicOperand; }
    bool operator==(const Instruction&) const = default;
};

struct Program {
    std::string name;
    int n_logical_qubits = 0;
    std::vector<Instruction> instructions;

    bool operator==(const Program&) const = default;
};

class ParseError : public ConfigError {
public:
    ParseError(int line, int col, const std::string& message)
        : ConfigError("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          line(line), col(col) {}
    int line;
    int col;
};

/// Parses the line-oriented trace format:
///   .name STR / .qubits N headers, '#' comments, and
///   OPCODE q<i> [q<j>|MAGIC] [-> c<k>] [if c<m>]
/// Validates operand arity, MAGIC placement, register single-assignment, and
/// that every condition reads a register written exactly once earlier.
Program parse_program(const std::string& text);

/// Canonical text form; parse(emit(p)) == p for valid programs.
std::string emit_program(const Program& program);

struct DagEdge {
    int from = 0;
    int to = 0;
    bool data = false;      // same-qubit program order
    bool classical = false; // condition register writer -> reader
};

struct DependencyDag {
    std::vector<DagEdge> edges;
    std::vector<std::vector<int>> succ; // deduplicated adjacency
    std::vector<std::vector<int>> pred;
    /// Longest dependency chain, in instructions.
    int depth = 0;
    /// Longest dependency chain weighted by instruction durations — the
    /// lower bound on execution time with unlimited parallelism.
    long long critical_path_beats = 0;
};

DependencyDag build_dependency_dag(const Program& program);

/// Benchmark-characterization counts. A MAGIC measurement and its folded
/// conditional OP_S count as one magic op; magic ops are included in
/// two_qubit_ops, so total = one_qubit + two_qubit.
struct ProgramStats {
    long long total_ops = 0;
    long long one_qubit_ops = 0;
    long long two_qubit_ops = 0;
    long long magic_ops = 0;

    bool operator==(const ProgramStats&) const = default;
};

ProgramStats program_stats(const Program& program);

} // namespace lssim
