// Command-line front end: sparsify / hastings / verify / distance / expansion.
// Exit codes: 0 success, 1 usage or I/O failure, 2 verification or
// mathematical failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "layerwr/codefile.hpp"
#include "layerwr/distance.hpp"
#include "layerwr/expansion.hpp"
#include "layerwr/hastings.hpp"
#include "layerwr/layer.hpp"

using namespace layerwr;
using nlohmann::json;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  }
};

json profile_json(const WeightProfile& p) {
  return {{"wx", p.wx},
          {"qx", p.qx},
          {"wz", p.wz},
          {"qz", p.qz},
          {"total_degree", p.total_degree}};
}

std::string profile_line(const WeightProfile& p) {
  return "wX=" + std::to_string(p.wx) + " qX=" + std::to_string(p.qx) +
         " wZ=" + std::to_string(p.wz) + " qZ=" + std::to_string(p.qz) +
         " total_degree=" + std::to_string(p.total_degree);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot write " + path);
  }
  out << text;
}

std::string cell_table_path(const std::string& out_path) {
  std::string stem = out_path;
  if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json") {
    stem = stem.substr(0, stem.size() - 5);
  }
  return stem + ".cells.json";
}

json cell_list(const std::vector<CellIndex>& cells) {
  json list = json::array();
  for (const CellIndex& c : cells) {
    list.push_back({{"block", block_name(c.block)},
                    {"layer", c.layer},
                    {"a", CellIndex::coord_name(c.a)},
                    {"b", CellIndex::coord_name(c.b)}});
  }
  return list;
}

std::optional<size_t> try_exact_distance(const ChainComplex& c, Side side) {
  try {
    DistanceResult d = distance_exact(c, side);
    if (d.infinite) {
      return std::nullopt;
    }
    return d.weight;
  } catch (const ThresholdExceeded&) {
    return std::nullopt;
  }
}

int cmd_sparsify(const std::string& in_path, const std::string& coloring_path,
                 const std::string& chi_arg, const std::string& out_path,
                 const std::string& report_path, bool allow_failures) {
  Timer timer;
  CodeFile input = load_code_file(in_path);
  input.code.validate();

  std::optional<Coloring> coloring;
  std::string source;
  if (!coloring_path.empty()) {
    coloring = load_coloring(coloring_path);
    source = "file";
  } else if (input.coloring) {
    coloring = input.coloring;
    source = "metadata";
  }
  std::optional<std::array<int, 3>> chi_override;
  if (!chi_arg.empty()) {
    std::array<int, 3> chi{};
    if (std::sscanf(chi_arg.c_str(), "%d,%d,%d", &chi[0], &chi[1], &chi[2]) != 3 ||
        chi[0] < 1 || chi[1] < 1 || chi[2] < 1) {
      std::cerr << "sparsify: --chi expects three positive integers X,Q,Z\n";
      return 1;
    }
    chi_override = chi;
  } else if (input.chi) {
    chi_override = input.chi;
  }

  SparsifyResult res = sparsify(input.code, coloring, chi_override);
  if (!source.empty()) {
    res.report.coloring_source = source;
  }
  const SparsifyReport& rep = res.report;

  auto in_complex = from_css(input.code);
  std::optional<size_t> dx = try_exact_distance(in_complex, Side::X);
  std::optional<size_t> dz = try_exact_distance(in_complex, Side::Z);

  auto bound_json = [&](Side side, const std::optional<size_t>& d) {
    json b;
    const Rational& coeff = side == Side::X ? rep.bound_coeff_x : rep.bound_coeff_z;
    b["coefficient"] = coeff.to_string();
    if (d) {
      b["input_distance"] = *d;
      b["bound"] = distance_lower_bound(rep.profile_in, rep.chi_x, rep.chi_q, rep.chi_z,
                                        side, *d)
                       .to_string();
    } else {
      b["input_distance"] = nullptr;
    }
    return b;
  };

  json report;
  report["command"] = "sparsify";
  report["input"] = {{"path", in_path},
                     {"n", rep.n_in},
                     {"k", rep.k_in},
                     {"weights", profile_json(rep.profile_in)}};
  report["chi"] = {rep.chi_x, rep.chi_q, rep.chi_z};
  report["coloring_source"] = rep.coloring_source;
  report["output"] = {{"n", rep.n_out},
                      {"k", rep.k_out},
                      {"weights", profile_json(rep.profile_out)},
                      {"qubits_per_block", {rep.x_qubits, rep.q_qubits, rep.z_qubits}}};
  report["checks"] = {{"dd_zero", rep.dd_zero},
                      {"compatibility", rep.compatibility},
                      {"embedded_match", rep.embedded_match},
                      {"h1_x_zero", rep.h1x_zero},
                      {"h1_z_zero", rep.h1z_zero},
                      {"k_preserved", rep.k_preserved}};
  report["distance_bound"] = {{"x", bound_json(Side::X, dx)},
                              {"z", bound_json(Side::Z, dz)}};

  std::cout << "input:  [[" << rep.n_in << ", " << rep.k_in << "]]  "
            << profile_line(rep.profile_in) << "\n";
  std::cout << "chi:    X=" << rep.chi_x << " Q=" << rep.chi_q << " Z=" << rep.chi_z
            << " (" << rep.coloring_source << ")\n";
  std::cout << "output: [[" << rep.n_out << ", " << rep.k_out << "]]  "
            << profile_line(rep.profile_out) << "\n";
  std::cout << "checks: dd_zero=" << rep.dd_zero << " compatibility=" << rep.compatibility
            << " embedded=" << rep.embedded_match << " h1x=" << rep.h1x_zero
            << " h1z=" << rep.h1z_zero << " k_preserved=" << rep.k_preserved << "\n";
  std::cout << "bounds: d_X >= " << rep.bound_coeff_x.to_string() << " * d_X(input)"
            << (dx ? " = " + distance_lower_bound(rep.profile_in, rep.chi_x, rep.chi_q,
                                                  rep.chi_z, Side::X, *dx)
                              .to_string()
                   : std::string())
            << ", d_Z >= " << rep.bound_coeff_z.to_string() << " * d_Z(input)"
            << (dz ? " = " + distance_lower_bound(rep.profile_in, rep.chi_x, rep.chi_q,
                                                  rep.chi_z, Side::Z, *dz)
                              .to_string()
                   : std::string())
            << "\n";

  // reports and outputs are only emitted for clean runs unless the caller
  // opted into failures
  if (!rep.all_ok() && !allow_failures) {
    std::cerr << "sparsify: verification failed:" << (rep.dd_zero ? "" : " dd_zero")
              << (rep.compatibility ? "" : " compatibility")
              << (rep.embedded_match ? "" : " embedded_match")
              << (rep.h1x_zero ? "" : " h1_x_zero") << (rep.h1z_zero ? "" : " h1_z_zero")
              << (rep.k_preserved ? "" : " k_preserved") << "\n";
    return 2;
  }
  if (!out_path.empty()) {
    CodeFile out;
    out.code = res.output;
    out.name = input.name.empty() ? "sparsified" : input.name + "-sparse";
    save_code_file(out, out_path);
    json table;
    table["format_version"] = 1;
    table["qubits"] = cell_list(res.assembly.cells1);
    table["x_checks"] = cell_list(res.assembly.cells2);
    table["z_checks"] = cell_list(res.assembly.cells0);
    write_text_file(cell_table_path(out_path), table.dump(2) + "\n");
    std::cout << "wrote " << out_path << " and " << cell_table_path(out_path) << "\n";
  }
  if (!report_path.empty()) {
    write_text_file(report_path, report.dump(2) + "\n");
  }
  std::cout << "elapsed: " << timer.ms() << " ms\n";
  return 0;
}

int cmd_hastings(const std::string& in_path, const std::string& partial,
                 const std::string& out_path, const std::string& report_path,
                 bool allow_failures) {
  Timer timer;
  CodeFile input = load_code_file(in_path);
  input.code.validate();
  size_t k_in = input.code.logical_dimension();

  json report;
  report["command"] = "hastings";
  report["input"] = {{"path", in_path}, {"n", input.code.n}, {"k", k_in}};
  CssCode output;

  if (!partial.empty()) {
    std::vector<size_t> zs;
    std::stringstream ss(partial);
    std::string item;
    while (std::getline(ss, item, ',')) {
      zs.push_back(std::stoul(item));
    }
    ConeResult res = cone(input.code, zs);
    output = res.code;
    report["mode"] = "partial_cone";
    report["coned_checks"] = zs;
  } else {
    PipelineResult res = hastings_pipeline(input.code);
    output = res.output;
    report["mode"] = "pipeline";
    json stages = json::array();
    for (const auto& s : res.stages) {
      stages.push_back({{"name", s.name},
                        {"n", s.n},
                        {"k", s.k},
                        {"wz", s.weights.wz},
                        {"qz", s.weights.qz},
                        {"qx", s.weights.qx},
                        {"wx", s.weights.wx}});
      std::cout << s.name << ": [[" << s.n << ", " << s.k << "]] wZ=" << s.weights.wz
                << " qZ=" << s.weights.qz << " wX=" << s.weights.wx
                << " qX=" << s.weights.qx << "\n";
    }
    report["stages"] = stages;
    report["reasonableness"] = {
        {"input",
         {{"reasonable", res.input_reasonable.reasonable},
          {"checks_examined", res.input_reasonable.checks_examined},
          {"method", res.input_reasonable.method}}},
        {"cone",
         {{"reasonable", res.cone_reasonable.reasonable},
          {"checks_examined", res.cone_reasonable.checks_examined},
          {"method", res.cone_reasonable.method}}}};
  }

  size_t k_out = output.logical_dimension();
  bool k_preserved = k_out == k_in;
  HastingsProfile p = hastings_profile(output);
  report["output"] = {{"n", output.n},
                      {"k", k_out},
                      {"wz", p.wz},
                      {"qz", p.qz},
                      {"qx", p.qx},
                      {"wx", p.wx}};
  report["checks"] = {{"k_preserved", k_preserved}};

  std::cout << "output: [[" << output.n << ", " << k_out << "]] wZ=" << p.wz
            << " qZ=" << p.qz << " wX=" << p.wx << " qX=" << p.qx << "\n";

  if (!k_preserved && !allow_failures) {
    std::cerr << "hastings: logical dimension changed (" << k_in << " -> " << k_out
              << ")\n";
    return 2;
  }
  if (!out_path.empty()) {
    CodeFile out;
    out.code = output;
    out.name = input.name.empty() ? "hastings" : input.name + "-hastings";
    save_code_file(out, out_path);
  }
  if (!report_path.empty()) {
    write_text_file(report_path, report.dump(2) + "\n");
  }
  std::cout << "elapsed: " << timer.ms() << " ms\n";
  return 0;
}

int cmd_verify(const std::string& in_path) {
  CodeFile input = load_code_file(in_path);
  bool commutes = true;
  std::string reason;
  try {
    input.code.validate();
  } catch (const CommutationError& e) {
    commutes = false;
    reason = e.what();
  }
  std::cout << "n = " << input.code.n << "\n";
  std::cout << "X-checks = " << input.code.hx.rows
            << ", Z-checks = " << input.code.hz.rows << "\n";
  std::cout << "commutation: " << (commutes ? "ok" : ("FAIL (" + reason + ")")) << "\n";
  if (!commutes) {
    return 2;
  }
  std::cout << "k = " << input.code.logical_dimension() << "\n";
  std::cout << profile_line(weight_profile(input.code)) << "\n";
  return 0;
}

int cmd_distance(const std::string& in_path, const std::string& side_arg, bool exact,
                 size_t search_trials, std::optional<uint64_t> seed) {
  CodeFile input = load_code_file(in_path);
  input.code.validate();
  Side side = side_arg == "X" ? Side::X : Side::Z;
  auto complex = from_css(input.code);

  if (exact) {
    try {
      DistanceResult d = distance_exact(complex, side);
      if (d.infinite) {
        std::cout << "d_" << side_arg << " = infinite (no logicals of this type)\n";
        return 0;
      }
      std::cout << "d_" << side_arg << " = " << d.weight << " (exact)\n";
      std::cout << "witness qubits:";
      for (size_t q : d.witness.support()) {
        std::cout << " " << q;
      }
      std::cout << "\ncertificate: witness lies in the check kernel and outside the "
                   "stabilizer row space\n";
      return 0;
    } catch (const ThresholdExceeded& e) {
      std::cerr << "distance: kernel dimension " << e.dimension
                << " exceeds the enumeration threshold; use --search N --seed S\n";
      return 2;
    }
  }
  if (!seed) {
    std::cerr << "distance: --seed is required with --search\n";
    return 1;
  }
  DistanceResult d = distance_upper(complex, side, search_trials, *seed);
  std::cout << "d_" << side_arg << " <= " << d.weight << " (" << search_trials
            << " trials, seed " << *seed << ")\n";
  std::cout << "witness qubits:";
  for (size_t q : d.witness.support()) {
    std::cout << " " << q;
  }
  std::cout << "\n";
  return 0;
}

int cmd_expansion(std::optional<size_t> rep_length,
                  const std::vector<size_t>& square_args) {
  bool pass = true;
  if (rep_length) {
    size_t length = *rep_length;
    Rational c = coexpansion_constant(repetition_graph(length));
    Rational c_bound(2, length);
    bool c_ok = c >= c_bound;
    pass = pass && c_ok;
    std::cout << "R(" << length << "): c = " << c.to_string() << " (bound "
              << c_bound.to_string() << ") " << (c_ok ? "PASS" : "FAIL") << "\n";
    for (size_t w = 1; w <= length; w++) {
      std::vector<size_t> projection;
      for (size_t i = 0; i < w; i++) {
        projection.push_back(i);
      }
      Rational rel = relative_coexpansion_constant(repetition_graph(length), projection);
      bool ok = rel >= Rational(1, length);
      pass = pass && ok;
      std::cout << "R(" << length << ") w=" << w << ": c_rel = " << rel.to_string()
                << " (bound " << Rational(1, length).to_string() << ") "
                << (ok ? "PASS" : "FAIL") << "\n";
    }
  } else {
    auto rep = check_square_bound(square_args[0], square_args[1], square_args[2]);
    std::cout << "R(" << rep.l1 << ") x R(" << rep.l2 << "), w = " << rep.w << ":\n";
    std::cout << "  c = " << rep.c.to_string() << " (bound " << rep.c_bound.to_string()
              << ") " << (rep.c_ok ? "PASS" : "FAIL") << "\n";
    std::cout << "  c_rel = " << rep.c_rel.to_string() << " (bound "
              << rep.c_rel_bound.to_string() << ") " << (rep.c_rel_ok ? "PASS" : "FAIL")
              << "\n";
    std::cout << "  pointwise: " << (rep.pointwise_ok ? "PASS" : "FAIL") << "\n";
    pass = rep.ok();
  }
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layer-code weight reduction toolkit"};
  app.require_subcommand(1);

  std::string in_path, coloring_path, chi_arg, out_path, report_path;
  bool allow_failures = false;

  auto* sparsify_cmd = app.add_subcommand("sparsify", "weight-reduce a CSS code");
  sparsify_cmd->add_option("input", in_path, "code file")->required();
  sparsify_cmd->add_option("--coloring", coloring_path, "coloring file");
  sparsify_cmd->add_option("--chi", chi_arg, "layer sizes X,Q,Z (lower bounds)");
  sparsify_cmd->add_option("--out", out_path, "output code file");
  sparsify_cmd->add_option("--report", report_path, "JSON report file");
  sparsify_cmd->add_flag("--allow-failures", allow_failures,
                         "exit 0 even when verification fails");

  std::string partial;
  auto* hastings_cmd = app.add_subcommand("hastings", "run the reference pipeline");
  hastings_cmd->add_option("input", in_path, "code file")->required();
  hastings_cmd->add_option("--partial", partial, "cone only these Z-checks (comma list)");
  hastings_cmd->add_option("--out", out_path, "output code file");
  hastings_cmd->add_option("--report", report_path, "JSON report file");
  hastings_cmd->add_flag("--allow-failures", allow_failures,
                         "exit 0 even when verification fails");

  auto* verify_cmd =
      app.add_subcommand("verify", "print parameters and check commutation");
  verify_cmd->add_option("input", in_path, "code file")->required();

  std::string side = "X";
  bool exact = false;
  size_t trials = 0;
  auto* distance_cmd =
      app.add_subcommand("distance", "exact or randomized code distance");
  distance_cmd->add_option("input", in_path, "code file")->required();
  distance_cmd->add_option("--side", side, "X or Z")
      ->required()
      ->check(CLI::IsMember({"X", "Z"}));
  distance_cmd->add_flag("--exact", exact, "enumerate the kernel");
  distance_cmd->add_option("--search", trials, "number of randomized trials");
  uint64_t seed_value = 0;
  auto* seed_opt = distance_cmd->add_option("--seed", seed_value, "search seed");

  size_t rep_value = 0;
  std::vector<size_t> square_args;
  auto* expansion_cmd = app.add_subcommand("expansion", "coexpansion bound checks");
  auto* rep_opt = expansion_cmd->add_option("--rep", rep_value, "repetition length L");
  expansion_cmd->add_option("--square", square_args, "grid check: L1 L2 w")->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(sparsify_cmd)) {
      return cmd_sparsify(in_path, coloring_path, chi_arg, out_path, report_path,
                          allow_failures);
    }
    if (app.got_subcommand(hastings_cmd)) {
      return cmd_hastings(in_path, partial, out_path, report_path, allow_failures);
    }
    if (app.got_subcommand(verify_cmd)) {
      return cmd_verify(in_path);
    }
    if (app.got_subcommand(distance_cmd)) {
      if (exact == (trials > 0)) {
        std::cerr << "distance: pass exactly one of --exact or --search N\n";
        return 1;
      }
      std::optional<uint64_t> seed;
      if (seed_opt->count() > 0) {
        seed = seed_value;
      }
      return cmd_distance(in_path, side, exact, trials, seed);
    }
    if (app.got_subcommand(expansion_cmd)) {
      if ((rep_opt->count() > 0) == (square_args.size() == 3)) {
        std::cerr << "expansion: pass exactly one of --rep L or --square L1 L2 w\n";
        return 1;
      }
      std::optional<size_t> rep_length;
      if (rep_opt->count() > 0) {
        rep_length = rep_value;
      }
      return cmd_expansion(rep_length, square_args);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    // commutation, coloring, compatibility, mismatch, threshold, reasonableness
    std::cerr << "verification error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
