// Acceptance suite: runs every structural criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "layerwr/codefile.hpp"
#include "layerwr/distance.hpp"
#include "layerwr/expansion.hpp"
#include "layerwr/hastings.hpp"
#include "layerwr/hgp.hpp"
#include "layerwr/layer.hpp"

using namespace layerwr;

#ifndef LAYERWR_DATA_DIR
#define LAYERWR_DATA_DIR "data"
#endif

namespace {

std::string data_path(const std::string& name) {
  return std::string(LAYERWR_DATA_DIR) + "/" + name;
}

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      why << (why.str().empty() ? "" : "; ") << msg;
    }
  }
};

bool profile_within_caps(Check& c, const WeightProfile& p, const std::string& tag) {
  c.require(p.wx <= 6, tag + ": wX = " + std::to_string(p.wx) + " > 6");
  c.require(p.wz <= 6, tag + ": wZ = " + std::to_string(p.wz) + " > 6");
  c.require(p.qx <= 4, tag + ": qX = " + std::to_string(p.qx) + " > 4");
  c.require(p.qz <= 4, tag + ": qZ = " + std::to_string(p.qz) + " > 4");
  c.require(p.total_degree <= 6,
            tag + ": total degree = " + std::to_string(p.total_degree) + " > 6");
  return c.ok;
}

// ---- criterion 1: Shor worked example --------------------------------------
bool criterion1(std::string& detail) {
  Check c;
  CodeFile shor = load_code_file(data_path("shor.json"));
  Coloring coloring = load_coloring(data_path("shor_fig_coloring.json"));
  SparsifyResult res = sparsify(shor.code, coloring);
  c.require(res.report.k_in == 1, "input k != 1");
  c.require(res.report.k_out == 1, "output k != 1");
  c.require(res.output.n == 173, "n' = " + std::to_string(res.output.n) + " != 173");
  profile_within_caps(c, res.report.profile_out, "output");
  c.require(res.report.compatibility, "compatibility identities failed");
  c.require(res.report.dd_zero, "boundary of boundary nonzero");
  EmbeddedComplex emb = embedded_complex(res.assembly, shor.code);
  c.require(emb.hx == shor.code.hx && emb.hz == shor.code.hz,
            "embedded complex differs from the input");
  detail = "[[173, 1]], weights (wX=" + std::to_string(res.report.profile_out.wx) +
           ", qX=" + std::to_string(res.report.profile_out.qx) +
           ", wZ=" + std::to_string(res.report.profile_out.wz) +
           ", qZ=" + std::to_string(res.report.profile_out.qz) + ", total=" +
           std::to_string(res.report.profile_out.total_degree) + ")";
  if (!c.ok) {
    detail = c.why.str();
  }
  return c.ok;
}

// ---- criterion 2: three-qubit code end to end -------------------------------
bool criterion2(std::string& detail) {
  Check c;
  CodeFile tri = load_code_file(data_path("tri.json"));
  SparsifyResult res = sparsify(tri.code);
  c.require(res.output.n == 7, "n' = " + std::to_string(res.output.n) + " != 7");
  c.require(res.report.k_out == 1, "k != 1");

  auto in_complex = from_css(tri.code);
  DistanceResult dx_in = distance_exact(in_complex, Side::X);
  DistanceResult dz_in = distance_exact(in_complex, Side::Z);
  c.require(dx_in.weight == 2, "input d_X != 2");
  c.require(dz_in.weight == 1, "input d_Z != 1");

  Rational bound_x = distance_lower_bound(res.report.profile_in, res.report.chi_x,
                                          res.report.chi_q, res.report.chi_z, Side::X,
                                          dx_in.weight);
  Rational bound_z = distance_lower_bound(res.report.profile_in, res.report.chi_x,
                                          res.report.chi_q, res.report.chi_z, Side::Z,
                                          dz_in.weight);
  DistanceResult dx_out = distance_exact(res.assembly.complex, Side::X);
  DistanceResult dz_out = distance_exact(res.assembly.complex, Side::Z);
  c.require(Rational(dx_out.weight, 1) >= bound_x, "output d_X below the bound");
  c.require(Rational(dz_out.weight, 1) >= bound_z, "output d_Z below the bound");
  detail = "[[7, 1]], input d = (2, 1), output d = (" + std::to_string(dx_out.weight) +
           ", " + std::to_string(dz_out.weight) + ") vs bounds (" + bound_x.to_string() +
           ", " + bound_z.to_string() + ")";
  if (!c.ok) {
    detail = c.why.str();
  }
  return c.ok;
}

// ---- criterion 3: bulk structural suite -------------------------------------
bool criterion3(std::string& detail) {
  Check c;
  for (uint64_t seed = 1; seed <= 50; seed++) {
    CssCode code = random_hypergraph_product(seed);
    SparsifyResult res = sparsify(code);
    std::string tag = "seed " + std::to_string(seed);
    c.require(res.report.k_preserved, tag + ": k changed");
    c.require(res.report.dd_zero, tag + ": dd != 0");
    c.require(res.report.compatibility, tag + ": compatibility failed");
    c.require(res.report.h1x_zero, tag + ": H1 of the X block nonzero");
    c.require(res.report.h1z_zero, tag + ": H1 of the Z block nonzero");
    profile_within_caps(c, res.report.profile_out, tag);
    if (!c.ok) {
      break;
    }
  }
  detail = "50 hypergraph products: k preserved, caps and identities hold";
  if (!c.ok) {
    detail = c.why.str();
  }
  return c.ok;
}

// ---- criterion 4: distance-bound consistency --------------------------------
bool criterion4(std::string& detail) {
  Check c;
  size_t exact_runs = 0, search_runs = 0;

  auto check_instance = [&](const std::string& tag, const CssCode& input,
                            const SparsifyResult& res, uint64_t seed) {
    auto in_complex = from_css(input);
    for (Side side : {Side::X, Side::Z}) {
      DistanceResult d_in = distance_exact(in_complex, side);
      if (d_in.infinite) {
        continue;
      }
      Rational bound =
          distance_lower_bound(res.report.profile_in, res.report.chi_x,
                               res.report.chi_q, res.report.chi_z, side, d_in.weight);
      const ChainComplex& out = res.assembly.complex;
      size_t kernel_dim = side == Side::X ? out.dim(1) - rank(out.d1())
                                          : out.dim(1) - rank(out.d2());
      if (kernel_dim <= default_enumeration_threshold()) {
        DistanceResult d_out = distance_exact(out, side);
        exact_runs++;
        c.require(Rational(d_out.weight, 1) >= bound,
                  tag + ": exact d_" + side_name(side) + " = " +
                      std::to_string(d_out.weight) + " below bound " + bound.to_string());
      } else {
        DistanceResult d_out = distance_upper(out, side, 1000, seed);
        search_runs++;
        c.require(Rational(d_out.weight, 1) >= bound,
                  tag + ": search found d_" + side_name(side) + " <= " +
                      std::to_string(d_out.weight) + " below bound " + bound.to_string());
      }
    }
  };

  CodeFile tri = load_code_file(data_path("tri.json"));
  check_instance("tri", tri.code, sparsify(tri.code), 1001);
  CodeFile shor = load_code_file(data_path("shor.json"));
  Coloring fig = load_coloring(data_path("shor_fig_coloring.json"));
  check_instance("shor", shor.code, sparsify(shor.code, fig), 1002);
  check_instance("shor padded", shor.code,
                 sparsify(shor.code, fig, std::array<int, 3>{20, 6, 20}), 1003);
  for (uint64_t seed = 1; seed <= 50 && c.ok; seed++) {
    CssCode code = random_hypergraph_product(seed);
    check_instance("seed " + std::to_string(seed), code, sparsify(code), seed);
  }
  detail = std::to_string(exact_runs) + " exact, " + std::to_string(search_runs) +
           " searched (1000 trials each); no logical below its bound";
  if (!c.ok) {
    detail = c.why.str();
  }
  return c.ok;
}

// ---- criterion 5: chi padding ------------------------------------------------
bool criterion5(std::string& detail) {
  Check c;
  CodeFile shor = load_code_file(data_path("shor.json"));
  Coloring fig = load_coloring(data_path("shor_fig_coloring.json"));
  SparsifyResult res = sparsify(shor.code, fig, std::array<int, 3>{20, 6, 20});
  c.require(res.report.k_out == 1, "k != 1");
  auto dx = distance_exact(from_css(shor.code), Side::X);
  Rational bound = distance_lower_bound(res.report.profile_in, 20, 6, 20, Side::X,
                                        dx.weight);
  c.require(bound == Rational(6, 1), "X bound = " + bound.to_string() + " != 6");
  profile_within_caps(c, res.report.profile_out, "padded output");
  detail = "chi = (20, 6, 20): [[" + std::to_string(res.output.n) + ", 1]], X bound 6";
  if (!c.ok) {
    detail = c.why.str();
  }
  return c.ok;
}

// ---- criterion 6: reference pipeline ----------------------------------------
bool criterion6(std::string& detail) {
  Check c;
  std::ostringstream info;
  for (const char* name : {"steane.json", "shor.json"}) {
    CodeFile file = load_code_file(data_path(name));
    auto reasonable = check_z_reasonable(file.code, all_z_checks(file.code));
    c.require(reasonable.reasonable, std::string(name) + ": not Z-type reasonable");
    PipelineResult res = hastings_pipeline(file.code);
    c.require(res.output.logical_dimension() == file.code.logical_dimension(),
              std::string(name) + ": k changed");
    HastingsProfile p = hastings_profile(res.output);
    c.require(p.wz <= 36, std::string(name) + ": wZ = " + std::to_string(p.wz) + " > 36");
    c.require(p.qz <= 3, std::string(name) + ": qZ = " + std::to_string(p.qz) + " > 3");
    c.require(p.wx <= 42, std::string(name) + ": wX = " + std::to_string(p.wx) + " > 42");
    c.require(p.qx <= 4, std::string(name) + ": qX = " + std::to_string(p.qx) + " > 4");
    info << name << " [[" << res.output.n << ", " << res.output.logical_dimension()
         << "]] (" << p.wz << ", " << p.qz << ", " << p.wx << ", " << p.qx << ")  ";
  }
  detail = info.str() + "within (36, 3, 42, 4)";
  if (!c.ok) {
    detail = c.why.str();
  }
  return c.ok;
}

// ---- criterion 7: expansion suite -------------------------------------------
bool criterion7(std::string& detail) {
  Check c;
  c.require(coexpansion_constant(repetition_graph(3)) == Rational(3, 4),
            "c(R(3)) != 3/4");
  c.require(relative_coexpansion_constant(repetition_graph(3), {0}) == Rational(1, 2),
            "c_rel(R(3), w=1) != 1/2");
  for (size_t length = 2; length <= 10; length++) {
    c.require(coexpansion_constant(repetition_graph(length)) >= Rational(2, length),
              "R(" + std::to_string(length) + ") below 2/L");
    for (size_t w = 1; w <= length; w++) {
      std::vector<size_t> projection;
      for (size_t i = 0; i < w; i++) {
        projection.push_back(i);
      }
      c.require(relative_coexpansion_constant(repetition_graph(length), projection) >=
                    Rational(1, length),
                "R(" + std::to_string(length) + "), w=" + std::to_string(w) +
                    " below 1/L");
    }
  }
  size_t squares = 0;
  for (size_t l1 = 2; l1 <= 10; l1++) {
    for (size_t l2 = 2; l2 * l1 <= 20; l2++) {
      for (size_t w = 1; w <= l1; w++) {
        auto rep = check_square_bound(l1, l2, w);
        squares++;
        c.require(rep.ok(), "square (" + std::to_string(l1) + ", " + std::to_string(l2) +
                                ", " + std::to_string(w) + ") failed");
      }
    }
  }
  detail = "repetition bounds for L <= 10, " + std::to_string(squares) +
           " square checks, R(3) constants exact";
  if (!c.ok) {
    detail = c.why.str();
  }
  return c.ok;
}

// ---- criterion 8: determinism and I/O ---------------------------------------
bool criterion8(std::string& detail) {
  Check c;
  CodeFile shor = load_code_file(data_path("shor.json"));
  Coloring fig = load_coloring(data_path("shor_fig_coloring.json"));
  auto emit = [&]() {
    SparsifyResult res = sparsify(shor.code, fig);
    CodeFile out;
    out.code = res.output;
    return serialize_code(out);
  };
  c.require(emit() == emit(), "repeated sparsify runs serialize differently");

  auto shor_complex = from_css(shor.code);
  DistanceResult a = distance_upper(shor_complex, Side::X, 100, 42);
  DistanceResult b = distance_upper(shor_complex, Side::X, 100, 42);
  c.require(a.weight == b.weight && a.witness == b.witness,
            "distance search not deterministic");

  for (const char* name : {"tri.json", "shor.json", "steane.json"}) {
    std::ifstream in(data_path(name), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    c.require(serialize_code(parse_code(buf.str())) == buf.str(),
              std::string(name) + " does not round-trip byte-identically");
  }
  detail = "byte-identical reruns and round trips";
  if (!c.ok) {
    detail = c.why.str();
  }
  return c.ok;
}

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "Shor worked example", 5.0, criterion1},
      {2, "three-qubit code end to end", 1.0, criterion2},
      {3, "bulk structural suite (50 hypergraph products)", 300.0, criterion3},
      {4, "distance-bound consistency", 600.0, criterion4},
      {5, "chi padding", 60.0, criterion5},
      {6, "reference weight-reduction pipeline", 60.0, criterion6},
      {7, "coexpansion suite", 120.0, criterion7},
      {8, "determinism and file round trips", 60.0, criterion8},
  };
  int failures = 0;
  for (auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.budget_seconds) {
      ok = false;
      detail += " [over budget: " + std::to_string(elapsed) + " s > " +
                std::to_string(criterion.budget_seconds) + " s]";
    }
    std::printf("[%s] criterion %d: %s (%.2f s) - %s\n", ok ? "PASS" : "FAIL",
                criterion.id, criterion.title.c_str(), elapsed, detail.c_str());
    std::fflush(stdout);
    if (!ok) {
      failures++;
    }
  }
  return failures;
}
