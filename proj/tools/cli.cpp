#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "qsim/algorithms.hpp"
#include "qsim/bb84.hpp"
#include "qsim/circuit.hpp"
#include "qsim/gates.hpp"
#include "qsim/infotheory.hpp"
#include "qsim/noise.hpp"

namespace qsim::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Context {
  std::uint64_t seed;
  bool json;
  std::ostream& out;
};

std::string num(double x, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// Character i of a bitstring is qubit i.
Index parse_bits(const std::string& bits, int n, const char* what) {
  if (static_cast<int>(bits.size()) != n) {
    throw DomainError(std::string(what) + " must have " + std::to_string(n) + " bits");
  }
  Index idx = 0;
  for (int q = 0; q < n; ++q) {
    if (bits[q] != '0' && bits[q] != '1') {
      throw DomainError(std::string(what) + " may contain only 0 and 1");
    }
    if (bits[q] == '1') idx |= Index{1} << q;
  }
  return idx;
}

std::string bits_of(Index idx, int n) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q) s[q] = (idx >> q) & 1 ? '1' : '0';
  return s;
}

QubitList parse_keep(const std::string& text) {
  QubitList keep;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int q = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), q);
    if (ec != std::errc() || end != item.data() + item.size()) {
      throw DomainError("--keep expects comma-separated qubit indices");
    }
    keep.push_back(q);
  }
  return keep;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.message());
  }
}

Json amplitudes_json(const StateVector& v) {
  Json list = Json::array();
  for (Index i = 0; i < v.dim(); ++i) {
    if (std::abs(v[i]) <= Tolerance<double>::impossible_branch) continue;
    list.push_back({{"bits", bits_of(i, v.num_qubits())}, {"re", v[i].real()}, {"im", v[i].imag()}});
  }
  return list;
}

void print_amplitudes(std::ostream& out, const StateVector& v) {
  for (Index i = 0; i < v.dim(); ++i) {
    if (std::abs(v[i]) <= Tolerance<double>::impossible_branch) continue;
    out << "  |" << bits_of(i, v.num_qubits()) << "> " << num(v[i].real())
        << (v[i].imag() < 0 ? " - " : " + ") << num(std::abs(v[i].imag())) << "i\n";
  }
}

void emit(const Context& ctx, const Json& j) { ctx.out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

void cmd_run(const Context& ctx, const std::string& file, const std::string& input) {
  const Circuit c = load_circuit(file);
  const int n = c.num_qubits();
  const Index start = input.empty() ? 0 : parse_bits(input, n, "--input");
  const StateVector final_state = run(c, basis_state(n, start));
  const MeasurementRecord m = measure_all(final_state, ctx.seed);
  if (ctx.json) {
    emit(ctx, {{"qubits", n},
               {"gates", c.size()},
               {"input", bits_of(start, n)},
               {"state", amplitudes_json(final_state)},
               {"measured", bits_of(m.outcome_index, n)},
               {"probability", m.probability}});
    return;
  }
  ctx.out << "qubits " << n << ", gates " << c.size() << ", input " << bits_of(start, n) << "\n"
          << "final state:\n";
  print_amplitudes(ctx.out, final_state);
  ctx.out << "measured " << bits_of(m.outcome_index, n) << " (p = " << num(m.probability) << ")\n";
}

void cmd_qft(const Context& ctx, int n, const std::string& input) {
  const Circuit c = qft_circuit(n);
  const int swaps = n / 2;
  Json j = {{"n", n},
            {"gates", c.size()},
            {"rotations", static_cast<int>(c.size()) - swaps},
            {"swaps", swaps}};
  std::optional<StateVector> out;
  if (!input.empty()) out = run(c, basis_state(n, parse_bits(input, n, "--input")));
  if (ctx.json) {
    j["circuit"] = render(c);
    if (out) j["output"] = amplitudes_json(*out);
    emit(ctx, j);
    return;
  }
  ctx.out << "qft on " << n << " qubits: " << c.size() << " gates (" << j["rotations"].get<int>()
          << " rotations, " << swaps << " swaps)\n"
          << render(c);
  if (out) {
    ctx.out << "output for |" << input << ">:\n";
    print_amplitudes(ctx.out, *out);
  }
}

void cmd_grover(const Context& ctx, int n, Index marked) {
  const GroverOracle oracle(n, {marked});
  const GroverResult r = grover_search(oracle, ctx.seed);
  if (ctx.json) {
    emit(ctx, {{"n", n},
               {"marked", marked},
               {"iterations", r.iterations},
               {"found", r.outcome},
               {"success_probability", r.success_probability}});
    return;
  }
  ctx.out << "search space " << oracle.search_space() << ", iterations " << r.iterations << "\n"
          << "found " << r.outcome << " (success probability " << num(r.success_probability)
          << ")\n";
}

void cmd_teleport(const Context& ctx) {
  std::mt19937_64 gen(derive_seed(ctx.seed, 0));
  const StateVector psi = random_state(1, gen);
  const TeleportResult r = teleport(psi, derive_seed(ctx.seed, 1));
  if (ctx.json) {
    emit(ctx, {{"input", amplitudes_json(psi)},
               {"b1", r.b1},
               {"b2", r.b2},
               {"received", amplitudes_json(r.received)},
               {"fidelity", r.fidelity}});
    return;
  }
  ctx.out << "input state:\n";
  print_amplitudes(ctx.out, psi);
  ctx.out << "classical bits b1=" << r.b1 << " b2=" << r.b2 << "\nreceived state:\n";
  print_amplitudes(ctx.out, r.received);
  ctx.out << "fidelity " << num(r.fidelity) << "\n";
}

void cmd_densecode(const Context& ctx, const std::string& input) {
  const Index bits = parse_bits(input, 2, "--input");
  const int b1 = bits & 1;
  const int b2 = (bits >> 1) & 1;
  const auto [d1, d2] = dense_code(b1, b2, ctx.seed);
  if (ctx.json) {
    emit(ctx, {{"sent", input},
               {"decoded", std::to_string(d1) + std::to_string(d2)},
               {"qubits_transmitted", 1}});
    return;
  }
  ctx.out << "sent " << input << " over one qubit of a singlet pair, decoded " << d1 << d2 << "\n";
}

void cmd_adder(const Context& ctx, const std::string& input) {
  std::vector<std::pair<int, int>> cases;
  if (input.empty()) {
    cases = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  } else {
    const Index xy = parse_bits(input, 2, "--input");
    cases = {{static_cast<int>(xy & 1), static_cast<int>(xy >> 1)}};
  }
  Json rows = Json::array();
  if (!ctx.json) ctx.out << "x y | sum carry\n";
  for (const auto& [x, y] : cases) {
    const HalfAdderOutput r = run_adder(x, y);
    if (ctx.json) {
      rows.push_back({{"x", x}, {"y", y}, {"sum", r.sum}, {"carry", r.carry}});
    } else {
      ctx.out << x << ' ' << y << " |  " << r.sum << "    " << r.carry << "\n";
    }
  }
  if (ctx.json) emit(ctx, rows);
}

void cmd_entropy(const Context& ctx, const std::vector<double>& probs, double messages) {
  const ProbDist d(probs);
  const double s = shannon_entropy(d);
  const double bits = compression_limit(d, messages);
  if (ctx.json) {
    emit(ctx, {{"entropy_bits", s}, {"messages", messages}, {"compressed_bits", bits}});
    return;
  }
  ctx.out << "entropy " << num(s) << " bits per message\n"
          << messages << " messages compress to " << num(bits) << " bits\n";
}

void cmd_vn_entropy(const Context& ctx, int n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("--p must lie in [0, 1]");
  std::mt19937_64 gen(ctx.seed);
  const DensityMatrix pure = to_density(random_state(n, gen));
  const DensityMatrix rho(
      n, (1 - p) * pure.matrix() + p * DensityMatrix::maximally_mixed(n).matrix());
  const double s = von_neumann_entropy(rho);
  if (ctx.json) {
    emit(ctx, {{"n", n}, {"noise", p}, {"entropy_bits", s}, {"purity", purity(rho)}});
    return;
  }
  ctx.out << "random " << n << "-qubit state mixed with weight " << num(p)
          << " of white noise\nvon Neumann entropy " << num(s) << " bits, purity "
          << num(purity(rho)) << "\n";
}

void cmd_entangle_entropy(const Context& ctx, const std::string& file, const std::string& keep) {
  StateVector v = bell_pair(BellPair::Singlet);
  std::string source = "singlet";
  if (!file.empty()) {
    const Circuit c = load_circuit(file);
    v = run(c, basis_state(c.num_qubits(), 0));
    source = file;
  }
  const QubitList part = parse_keep(keep);
  const double e = entanglement_entropy(v, part);
  if (ctx.json) {
    emit(ctx, {{"source", source}, {"keep", part}, {"entanglement_bits", e}});
    return;
  }
  ctx.out << "state " << source << ", partition {" << keep << "}\nentanglement entropy "
          << num(e) << " bits\n";
}

void cmd_capacity(const Context& ctx, double p) {
  const double c = bsc_capacity(p);
  if (ctx.json) {
    emit(ctx, {{"p", p}, {"capacity_bits", c}});
    return;
  }
  ctx.out << "binary symmetric channel p=" << num(p) << ": capacity " << num(c)
          << " bits per use\n";
}

void cmd_noise_sweep(const Context& ctx, std::optional<double> p, std::int64_t trials) {
  const std::vector<double> grid =
      p ? std::vector<double>{*p} : std::vector<double>{0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5};
  Json rows = Json::array();
  if (!ctx.json) ctx.out << "p,trials,logical_rate,predicted_rate\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const QecTrialStats s = logical_error_rate(grid[i], trials, derive_seed(ctx.seed, i));
    if (ctx.json) {
      rows.push_back({{"p", s.physical_p},
                      {"trials", s.trials},
                      {"logical_rate", s.logical_rate},
                      {"predicted_rate", s.predicted_rate()}});
    } else {
      ctx.out << num(s.physical_p) << ',' << s.trials << ',' << num(s.logical_rate) << ','
              << num(s.predicted_rate()) << "\n";
    }
  }
  if (ctx.json) emit(ctx, rows);
}

void cmd_qec_demo(const Context& ctx, const std::string& input) {
  const Index flips = parse_bits(input, 3, "--input");
  std::mt19937_64 gen(derive_seed(ctx.seed, 0));
  const StateVector psi = random_state(1, gen);
  const StateVector code = encode_bitflip3(psi);
  StateVector noisy = code;
  for (int q = 0; q < 3; ++q) {
    if ((flips >> q) & 1) apply_inplace(noisy, pauli(Pauli::X), {q});
  }
  const SyndromeResult r = syndrome_correct(noisy, derive_seed(ctx.seed, 1));
  const double f = fidelity(r.state, code);
  if (ctx.json) {
    emit(ctx, {{"flips", input},
               {"syndrome", std::to_string(r.s01) + std::to_string(r.s12)},
               {"corrected_qubit", r.corrected_qubit},
               {"fidelity", f},
               {"recovered", f > 1 - Tolerance<double>::eigenvalue}});
    return;
  }
  ctx.out << "logical state:\n";
  print_amplitudes(ctx.out, psi);
  ctx.out << "bit flips " << input << ", syndrome " << r.s01 << r.s12 << ", ";
  if (r.corrected_qubit < 0) {
    ctx.out << "no correction\n";
  } else {
    ctx.out << "flipped qubit " << r.corrected_qubit << " back\n";
  }
  ctx.out << "fidelity with the encoded state " << num(f) << "\n";
}

void cmd_bb84(const Context& ctx, Index length, bool eve, double threshold, bool transcript) {
  Bb84Config cfg;
  cfg.raw_length = length;
  cfg.eavesdropper = eve ? Eavesdropper::InterceptResend : Eavesdropper::None;
  cfg.detection_threshold = threshold;
  cfg.seed = ctx.seed;
  const Bb84Result r = run_bb84(cfg);
  if (ctx.json) {
    Json j = {{"raw_length", r.raw_length},
              {"sifted_length", r.sifted_length},
              {"sample_size", r.sample_size},
              {"qber", r.measured_qber},
              {"detected", r.eavesdropping_detected},
              {"privacy_amplified", r.privacy_amplified},
              {"key_hex", key_hex(r.final_key)}};
    if (transcript) {
      Json rounds = Json::array();
      for (const Bb84Round& t : r.transcript) {
        rounds.push_back({{"bit", t.bit},
                          {"basis_a", std::string(1, basis_symbol(t.basis_a))},
                          {"basis_e", t.basis_e ? Json(std::string(1, basis_symbol(*t.basis_e)))
                                                : Json(nullptr)},
                          {"basis_b", std::string(1, basis_symbol(t.basis_b))},
                          {"outcome", t.outcome},
                          {"sifted", t.sifted},
                          {"disclosed", t.disclosed}});
      }
      j["transcript"] = rounds;
    }
    emit(ctx, j);
    return;
  }
  if (transcript) {
    ctx.out << "bit A E B out sifted disclosed\n";
    for (const Bb84Round& t : r.transcript) {
      ctx.out << t.bit << "   " << basis_symbol(t.basis_a) << ' '
              << (t.basis_e ? basis_symbol(*t.basis_e) : '-') << ' ' << basis_symbol(t.basis_b)
              << ' ' << t.outcome << "   " << t.sifted << "      " << t.disclosed << "\n";
    }
  }
  ctx.out << "raw " << r.raw_length << ", sifted " << r.sifted_length << ", sampled "
          << r.sample_size << " with " << r.sample_errors << " errors\n"
          << "qber " << num(r.measured_qber) << " (threshold " << num(threshold) << ")\n";
  if (r.eavesdropping_detected) {
    ctx.out << "eavesdropping detected, key discarded\n";
  } else {
    ctx.out << "key (" << r.final_key.size() << " bits" << (r.privacy_amplified ? ", amplified" : "")
            << "): " << key_hex(r.final_key) << "\n";
  }
}

void cmd_nocloning(const Context& ctx) {
  std::mt19937_64 gen(ctx.seed);
  const StateVector zero = basis_state(1, 0);
  const StateVector one = basis_state(1, 1);
  const StateVector plus = apply(zero, hadamard(), {0});
  const StateVector rnd = random_state(1, gen);
  const std::vector<std::tuple<std::string, StateVector, StateVector>> pairs = {
      {"|0>,|1>", zero, one}, {"|0>,|+>", zero, plus}, {"|+>,|+>", plus, plus},
      {"|0>,random", zero, rnd}};
  Json rows = Json::array();
  if (!ctx.json) ctx.out << "pair        |<u|v>|   clonable  disturbance-fidelity\n";
  for (const auto& [name, u, v] : pairs) {
    const NoCloningReport c = verify_no_cloning(u, v);
    const DisturbanceReport d = eavesdrop_disturbance_demo(u, v);
    if (ctx.json) {
      rows.push_back({{"pair", name},
                      {"overlap", c.overlap_magnitude},
                      {"clonable", c.clonable},
                      {"measured_fidelity", d.expected_fidelity}});
    } else {
      ctx.out << std::left << std::setw(12) << name << std::setw(10) << num(c.overlap_magnitude, 6)
              << std::setw(10) << (c.clonable ? "yes" : "no") << num(d.expected_fidelity, 6) << "\n";
    }
  }
  if (ctx.json) emit(ctx, rows);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"State-vector quantum computing toolkit", "qsim"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_flag("--json", json, "Emit one JSON document");

  std::string file;
  std::string input;
  std::string keep = "0";
  int n = 3;
  Index marked = 0;
  Index length = 4096;
  bool eve = false;
  bool transcript = false;
  std::optional<double> p;
  std::int64_t trials = 10000;
  double threshold = 0.12;
  double messages = 1;
  std::vector<double> probs;

  auto* run_cmd = app.add_subcommand("run", "Run a circuit file on a basis input");
  run_cmd->add_option("file", file, "Circuit file")->required();
  run_cmd->add_option("--input", input, "Initial basis state, qubit 0 first");

  auto* qft_cmd = app.add_subcommand("qft", "Quantum Fourier transform circuit");
  qft_cmd->add_option("--n", n, "Qubits")->capture_default_str();
  qft_cmd->add_option("--input", input, "Basis input to transform");

  auto* grover_cmd = app.add_subcommand("grover", "Search for one marked item");
  grover_cmd->add_option("--n", n, "Qubits")->capture_default_str();
  grover_cmd->add_option("--marked", marked, "Marked index")->required();

  auto* teleport_cmd = app.add_subcommand("teleport", "Teleport a random qubit state");

  auto* dense_cmd = app.add_subcommand("densecode", "Send two bits over one qubit");
  dense_cmd->add_option("--input", input, "Two bits")->required();

  auto* adder_cmd = app.add_subcommand("adder", "Reversible half adder");
  adder_cmd->add_option("--input", input, "Bits xy (default: full truth table)");

  auto* entropy_cmd = app.add_subcommand("entropy", "Shannon entropy of a distribution");
  entropy_cmd->add_option("probs", probs, "Probabilities")->required();
  entropy_cmd->add_option("--n", messages, "Number of messages to compress");

  auto* vn_cmd = app.add_subcommand("vn-entropy", "von Neumann entropy of a noisy random state");
  vn_cmd->add_option("--n", n, "Qubits")->capture_default_str();
  vn_cmd->add_option("--p", p, "White-noise weight in [0, 1]");

  auto* ent_cmd = app.add_subcommand("entangle-entropy", "Entanglement across a bipartition");
  ent_cmd->add_option("file", file, "Circuit prepared from |0...0> (default: singlet)");
  ent_cmd->add_option("--keep", keep, "Qubits on one side, comma-separated")
      ->capture_default_str();

  auto* cap_cmd = app.add_subcommand("capacity", "Binary symmetric channel capacity");
  cap_cmd->add_option("--p", p, "Flip probability")->required();

  auto* sweep_cmd = app.add_subcommand("noise-sweep", "Bit-flip code logical error rate (CSV)");
  sweep_cmd->add_option("--p", p, "Single physical error rate (default: a grid)");
  sweep_cmd->add_option("--trials", trials, "Trials per rate")->capture_default_str();

  auto* qec_cmd = app.add_subcommand("qec-demo", "Correct bit flips on an encoded qubit");
  std::string flips = "010";
  qec_cmd->add_option("--input", flips, "Flip pattern, qubit 0 first")->capture_default_str();

  auto* bb84_cmd = app.add_subcommand("bb84", "BB84 key distribution");
  bb84_cmd->add_option("--length", length, "Raw qubits sent")->capture_default_str();
  bb84_cmd->add_flag("--eve", eve, "Intercept-resend eavesdropper");
  bb84_cmd->add_option("--threshold", threshold, "Abort above this QBER")->capture_default_str();
  bb84_cmd->add_flag("--transcript", transcript, "Include every round");

  auto* clone_cmd = app.add_subcommand("nocloning-demo", "Which state pairs can be copied");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Context ctx{seed, json, out};
  try {
    if (run_cmd->parsed()) cmd_run(ctx, file, input);
    if (qft_cmd->parsed()) cmd_qft(ctx, n, input);
    if (grover_cmd->parsed()) cmd_grover(ctx, n, marked);
    if (teleport_cmd->parsed()) cmd_teleport(ctx);
    if (dense_cmd->parsed()) cmd_densecode(ctx, input);
    if (adder_cmd->parsed()) cmd_adder(ctx, input);
    if (entropy_cmd->parsed()) cmd_entropy(ctx, probs, messages);
    if (vn_cmd->parsed()) cmd_vn_entropy(ctx, n, p.value_or(0.0));
    if (ent_cmd->parsed()) cmd_entangle_entropy(ctx, file, keep);
    if (cap_cmd->parsed()) cmd_capacity(ctx, *p);
    if (sweep_cmd->parsed()) cmd_noise_sweep(ctx, p, trials);
    if (qec_cmd->parsed()) cmd_qec_demo(ctx, flips);
    if (bb84_cmd->parsed()) cmd_bb84(ctx, length, eve, threshold, transcript);
    if (clone_cmd->parsed()) cmd_nocloning(ctx);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qsim::cli
