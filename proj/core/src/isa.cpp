#include "lssim/isa.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lssim {

const char* to_string(Opcode op) {
    switch (op) {
        case Opcode::InitZ: return "INIT_Z";
        case Opcode::InitX: return "INIT_X";
        case Opcode::OpH: return "OP_H";
        case Opcode::OpS: return "OP_S";
        case Opcode::MeasZ: return "MEAS_Z";
        case Opcode::MeasX: return "MEAS_X";
        case Opcode::MeasZZ: return "MEAS_ZZ";
        case Opcode::MeasXX: return "MEAS_XX";
    }
    return "?";
}

int duration_beats(Opcode op) {
    switch (op) {
        case Opcode::InitZ:
        case Opcode::InitX:
        case Opcode::MeasZ:
        case Opcode::MeasX:
        case Opcode::MeasZZ:
        case Opcode::MeasXX:
            return 1;
        case Opcode::OpS:
            return 2;
        case Opcode::OpH:
            return 3;
    }
    return 1;
}

int operand_count(Opcode op) { return is_two_qubit(op) ? 2 : 1; }

bool is_measurement(Opcode op) {
    return op == Opcode::MeasZ || op == Opcode::MeasX || op == Opcode::MeasZZ ||
           op == Opcode::MeasXX;
}

bool is_two_qubit(Opcode op) { return op == Opcode::MeasZZ || op == Opcode::MeasXX; }

namespace {

bool opcode_from_string(const std::string& s, Opcode& out) {
    static const std::map<std::string, Opcode> table = {
        {"INIT_Z", Opcode::InitZ},   {"INIT_X", Opcode::InitX}, {"OP_H", Opcode::OpH},
        {"OP_S", Opcode::OpS},       {"MEAS_Z", Opcode::MeasZ}, {"MEAS_X", Opcode::MeasX},
        {"MEAS_ZZ", Opcode::MeasZZ}, {"MEAS_XX", Opcode::MeasXX}};
    auto it = table.find(s);
    if (it == table.end()) return false;
    out = it->second;
    return true;
}

struct Token {
    std::string text;
    int col; // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '#')
            ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

int parse_id(const Token& tok, char prefix, int line_no, const char* what) {
    if (tok.text.size() < 2 || tok.text[0] != prefix)
        throw ParseError(line_no, tok.col, std::string("expected ") + what + ", got '" + tok.text + "'");
    for (size_t i = 1; i < tok.text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok.text[i])))
            throw ParseError(line_no, tok.col, std::string("malformed ") + what + " '" + tok.text + "'");
    return std::stoi(tok.text.substr(1));
}

} // namespace

Program parse_program(const std::string& text) {
    Program program;
    bool qubits_declared = false;
    int max_qubit = -1;
    std::map<int, int> register_writer; // register id -> instruction index

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (tokens[0].text == ".qubits") {
            if (tokens.size() != 2)
                throw ParseError(line_no, tokens[0].col, ".qubits takes one argument");
            try {
                program.n_logical_qubits = std::stoi(tokens[1].text);
            } catch (const std::exception&) {
                throw ParseError(line_no, tokens[1].col, "malformed qubit count");
            }
            if (program.n_logical_qubits < 1)
                throw ParseError(line_no, tokens[1].col, "qubit count must be >= 1");
            qubits_declared = true;
            continue;
        }
        if (tokens[0].text == ".name") {
            if (tokens.size() < 2)
                throw ParseError(line_no, tokens[0].col, ".name takes one argument");
            program.name = tokens[1].text;
            continue;
        }

        Instruction inst;
        inst.line = line_no;
        if (!opcode_from_string(tokens[0].text, inst.opcode))
            throw ParseError(line_no, tokens[0].col, "unknown opcode '" + tokens[0].text + "'");

        size_t pos = 1;
        auto need = [&](const char* what) -> const Token& {
            if (pos >= tokens.size())
                throw ParseError(line_no, static_cast<int>(line.size()) + 1,
                                 std::string("missing ") + what);
            return tokens[pos];
        };

        inst.q0 = parse_id(need("qubit operand"), 'q', line_no, "qubit operand");
        max_qubit = std::max(max_qubit, inst.q0);
        ++pos;

        if (operand_count(inst.opcode) == 2) {
            const Token& tok = need("second operand");
            if (tok.text == "MAGIC") {
                inst.q1 = kMagicOperand;
            } else {
                inst.q1 = parse_id(tok, 'q', line_no, "qubit operand");
                max_qubit = std::max(max_qubit, inst.q1);
            }
            ++pos;
        }

        while (pos < tokens.size()) {
            if (tokens[pos].text == "->") {
                ++pos;
                const Token& tok = need("register after '->'");
                if (!is_measurement(inst.opcode))
                    throw ParseError(line_no, tok.col,
                                     std::string(to_string(inst.opcode)) + " cannot write a register");
                if (inst.dest_register != kNoRegister)
                    throw ParseError(line_no, tok.col, "duplicate destination register");
                inst.dest_register = parse_id(tok, 'c', line_no, "register");
                ++pos;
            } else if (tokens[pos].text == "if") {
                ++pos;
                const Token& tok = need("register after 'if'");
                if (inst.condition != kNoRegister)
                    throw ParseError(line_no, tok.col, "duplicate condition");
                inst.condition = parse_id(tok, 'c', line_no, "register");
                ++pos;
            } else if (tokens[pos].text == "MAGIC") {
                throw ParseError(line_no, tokens[pos].col,
                                 "MAGIC is only allowed as the second operand of MEAS_ZZ/MEAS_XX");
            } else {
                throw ParseError(line_no, tokens[pos].col,
                                 "unexpected token '" + tokens[pos].text + "'");
            }
        }

        if (inst.dest_register != kNoRegister) {
            auto [it, inserted] = register_writer.emplace(
                inst.dest_register, static_cast<int>(program.instructions.size()));
            if (!inserted)
                throw ParseError(line_no, tokens[0].col,
                                 "register c" + std::to_string(inst.dest_register) +
                                     " is written more than once");
        }
        if (inst.condition != kNoRegister) {
            auto it = register_writer.find(inst.condition);
            if (it == register_writer.end())
                throw ParseError(line_no, tokens[0].col,
                                 "condition reads register c" + std::to_string(inst.condition) +
                                     " with no earlier writer");
        }
        program.instructions.push_back(inst);
    }

    if (!qubits_declared) program.n_logical_qubits = max_qubit + 1;
    if (max_qubit >= program.n_logical_qubits)
        throw ParseError(line_no, 1,
                         "qubit q" + std::to_string(max_qubit) + " exceeds declared .qubits " +
                             std::to_string(program.n_logical_qubits));
    return program;
}

std::string emit_program(const Program& program) {
    std::ostringstream out;
    if (!program.name.empty()) out << ".name " << program.name << "\n";
    out << ".qubits " << program.n_logical_qubits << "\n";
    for (const Instruction& inst : program.instructions) {
        out << to_string(inst.opcode) << " q" << inst.q0;
        if (inst.q1 == kMagicOperand)
            out << " MAGIC";
        else if (inst.q1 != kNoOperand)
            out << " q" << inst.q1;
        if (inst.dest_register != kNoRegister) out << " -> c" << inst.dest_register;
        if (inst.condition != kNoRegister) out << " if c" << inst.condition;
        out << "\n";
    }
    return out.str();
}

DependencyDag build_dependency_dag(const Program& program) {
    const int n = static_cast<int>(program.instructions.size());
    DependencyDag dag;
    dag.succ.resize(n);
    dag.pred.resize(n);

    std::map<std::pair<int, int>, size_t> edge_index;
    auto add_edge = [&](int from, int to, bool data, bool classical) {
        auto key = std::make_pair(from, to);
        auto it = edge_index.find(key);
        if (it == edge_index.end()) {
            edge_index.emplace(key, dag.edges.size());
            dag.edges.push_back({from, to, data, classical});
            dag.succ[from].push_back(to);
            dag.pred[to].push_back(from);
        } else {
            dag.edges[it->second].data |= data;
            dag.edges[it->second].classical |= classical;
        }
    };

    std::vector<int> last_use(static_cast<size_t>(program.n_logical_qubits), -1);
    std::map<int, int> register_writer;
    for (int i = 0; i < n; ++i) {
        const Instruction& inst = program.instructions[i];
        for (int q : {inst.q0, inst.q1}) {
            if (q < 0) continue;
            if (last_use[q] >= 0) add_edge(last_use[q], i, true, false);
            last_use[q] = i;
        }
        if (inst.condition != kNoRegister) {
            auto it = register_writer.find(inst.condition);
            if (it != register_writer.end()) add_edge(it->second, i, false, true);
        }
        if (inst.dest_register != kNoRegister) register_writer[inst.dest_register] = i;
    }

    // Longest paths over program order (edges always go forward).
    std::vector<int> depth(static_cast<size_t>(n), 1);
    std::vector<long long> beats(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        beats[i] = duration_beats(program.instructions[i].opcode);
        for (int p : dag.pred[i]) {
            depth[i] = std::max(depth[i], depth[p] + 1);
            beats[i] = std::max(beats[i],
                                beats[p] + duration_beats(program.instructions[i].opcode));
        }
        dag.depth = std::max(dag.depth, depth[i]);
        dag.critical_path_beats = std::max(dag.critical_path_beats, beats[i]);
    }
    return dag;
}

ProgramStats program_stats(const Program& program) {
    ProgramStats stats;
    for (const Instruction& inst : program.instructions) {
        if (is_two_qubit(inst.opcode)) {
            ++stats.two_qubit_ops;
            if (inst.uses_magic()) ++stats.magic_ops;
        } else if (inst.condition == kNoRegister) {
            ++stats.one_qubit_ops;
        }
        // Conditional one-qubit ops are folded into the magic op that wrote
        // their register and are not counted separately.
    }
    stats.total_ops = stats.one_qubit_ops + stats.two_qubit_ops;
    return stats;
}

} // namespace lssim
