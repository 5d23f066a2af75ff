#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsim/circuit.hpp"

namespace qsim {

ParseError::ParseError(int line, int column, std::string message)
    : DomainError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                  message),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

std::optional<GateKind> lookup_gate(std::string_view name) {
  static constexpr GateKind kNamed[] = {GateKind::H,     GateKind::X, GateKind::Y,
                                        GateKind::Z,     GateKind::Phase, GateKind::U,
                                        GateKind::Cnot,  GateKind::Ccnot, GateKind::Swap};
  for (GateKind k : kNamed) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<long long> parse_integer(std::string_view s) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

class LineParser {
 public:
  LineParser(int line_no, std::vector<Token> tokens, int num_qubits)
      : line_(line_no), tokens_(std::move(tokens)), num_qubits_(num_qubits) {}

  CircuitOp parse_op() {
    std::size_t pos = 0;
    int num_controls = 0;
    while (pos < tokens_.size() && tokens_[pos].text == "c") {
      ++num_controls;
      ++pos;
    }
    if (pos >= tokens_.size()) fail(tokens_.back(), "expected a gate name after 'c'");

    const Token& name_tok = tokens_[pos++];
    const auto kind = lookup_gate(name_tok.text);
    if (!kind) fail(name_tok, "unknown gate '" + std::string(name_tok.text) + "'");

    std::vector<Token> index_toks;
    std::vector<Token> param_toks;
    for (; pos < tokens_.size(); ++pos) {
      const Token& t = tokens_[pos];
      if (t.text.find('=') != std::string_view::npos) {
        param_toks.push_back(t);
      } else if (!param_toks.empty()) {
        fail(t, "qubit indices must precede key=value parameters");
      } else {
        index_toks.push_back(t);
      }
    }

    const int expected = num_controls + gate_arity(*kind);
    if (static_cast<int>(index_toks.size()) != expected) {
      const Token& at = index_toks.empty() ? name_tok : index_toks.back();
      fail(at, "'" + std::string(name_tok.text) + "' with " + std::to_string(num_controls) +
                   " control(s) expects " + std::to_string(expected) + " qubit index(es), got " +
                   std::to_string(index_toks.size()));
    }

    QubitList qubits;
    for (const Token& t : index_toks) {
      const auto q = parse_integer(t.text);
      if (!q || *q < 0) fail(t, "invalid qubit index '" + std::string(t.text) + "'");
      if (*q >= num_qubits_) {
        fail(t, "qubit index " + std::to_string(*q) + " out of range for " +
                    std::to_string(num_qubits_) + " qubits");
      }
      for (int seen : qubits) {
        if (seen == *q) fail(t, "qubit " + std::to_string(*q) + " used twice in one op");
      }
      qubits.push_back(static_cast<int>(*q));
    }

    const GateParams params = parse_params(*kind, name_tok, param_toks);
    QubitList controls(qubits.begin(), qubits.begin() + num_controls);
    QubitList targets(qubits.begin() + num_controls, qubits.end());
    return CircuitOp::named(*kind, std::move(targets), params, std::move(controls));
  }

 private:
  GateParams parse_params(GateKind kind, const Token& name_tok, const std::vector<Token>& toks) {
    std::vector<std::string_view> allowed;
    if (kind == GateKind::Phase) allowed = {"theta"};
    if (kind == GateKind::U) allowed = {"theta", "phi", "lam"};

    GateParams params;
    std::vector<std::string_view> seen;
    for (const Token& t : toks) {
      const auto eq = t.text.find('=');
      const std::string_view key = t.text.substr(0, eq);
      const std::string_view value = t.text.substr(eq + 1);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(t, "unknown parameter '" + std::string(key) + "' for '" +
                    std::string(name_tok.text) + "'");
      }
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
        fail(t, "parameter '" + std::string(key) + "' given twice");
      }
      const auto x = parse_real(value);
      if (!x) fail(t, "invalid number '" + std::string(value) + "'");
      seen.push_back(key);
      if (key == "theta") params.theta = *x;
      if (key == "phi") params.phi = *x;
      if (key == "lam") params.lam = *x;
    }
    for (std::string_view key : allowed) {
      if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
        fail(name_tok, "'" + std::string(name_tok.text) + "' requires parameter '" +
                           std::string(key) + "'");
      }
    }
    return params;
  }

  [[noreturn]] void fail(const Token& t, std::string message) const {
    throw ParseError(line_, t.column, std::move(message));
  }

  int line_;
  std::vector<Token> tokens_;
  int num_qubits_;
};

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

Circuit parse(std::string_view text) {
  std::optional<Circuit> circuit;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (tokens[0].text == "qubits") {
      if (circuit) throw ParseError(line_no, tokens[0].column, "duplicate 'qubits' header");
      if (tokens.size() != 2) {
        throw ParseError(line_no, tokens[0].column, "expected 'qubits <n>'");
      }
      const auto n = parse_integer(tokens[1].text);
      if (!n || *n < 1 || *n > kMaxStateQubits) {
        throw ParseError(line_no, tokens[1].column,
                         "qubit count must be an integer in [1, " +
                             std::to_string(kMaxStateQubits) + "]");
      }
      circuit.emplace(static_cast<int>(*n));
      continue;
    }
    if (!circuit) {
      throw ParseError(line_no, tokens[0].column, "missing 'qubits <n>' header");
    }
    LineParser lp(line_no, std::move(tokens), circuit->num_qubits());
    circuit->add(lp.parse_op());
  }
  if (!circuit) throw ParseError(std::max(line_no, 1), 1, "missing 'qubits <n>' header");
  return std::move(*circuit);
}

std::string render(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.num_qubits()) + "\n";
  for (const CircuitOp& op : c.ops()) {
    if (op.kind == GateKind::Custom) {
      throw DomainError("custom matrix ops have no textual form");
    }
    for (std::size_t i = 0; i < op.controls.size(); ++i) out += "c ";
    out += gate_name(op.kind);
    for (int q : op.qubits()) out += " " + std::to_string(q);
    if (op.kind == GateKind::Phase) out += " theta=" + format_real(op.params.theta);
    if (op.kind == GateKind::U) {
      out += " theta=" + format_real(op.params.theta) + " phi=" + format_real(op.params.phi) +
             " lam=" + format_real(op.params.lam);
    }
    out += "\n";
  }
  return out;
}

}  // namespace qsim
