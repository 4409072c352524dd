#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "layerwr/chain.hpp"
#include "layerwr/coloring.hpp"
#include "layerwr/distance.hpp"
#include "layerwr/errors.hpp"
#include "layerwr/gf2.hpp"
#include "layerwr/rational.hpp"

namespace layerwr {

// The three layer families. Every check and qubit of the input code becomes
// a surface-code patch; patches are glued along line defects so that the
// assembled code keeps the input's logical subspace at check weight <= 6 and
// total qubit degree <= 6.

enum class Block : int { X = 0, Q = 1, Z = 2 };

inline const char* block_name(Block b) {
  switch (b) {
    case Block::X: return "X";
    case Block::Q: return "Q";
    default: return "Z";
  }
}

/// Position of one cell: owning block, layer (index of the input check or
/// qubit the patch replaces), and two doubled-integer grid coordinates.
/// Integer coordinate c is stored as 2c, half-integer c+1/2 as 2c+1, so all
/// coordinates are exact and totally ordered.
struct CellIndex {
  Block block;
  size_t layer;
  int a;
  int b;

  auto operator<=>(const CellIndex&) const = default;

  static std::string coord_name(int doubled) {
    if (doubled % 2 == 0) {
      return std::to_string(doubled / 2);
    }
    return std::to_string((doubled - 1) / 2) + "+";
  }

  std::string label() const {
    return std::string(block_name(block)) + std::to_string(layer) + ":(" +
           coord_name(a) + "," + coord_name(b) + ")";
  }
};

/// The three block complexes with their cell tables, indexed by degree.
struct LayerBlocks {
  Coloring coloring;
  ChainComplex cx, cq, cz;
  std::array<std::vector<CellIndex>, 3> x_cells, q_cells, z_cells;
  std::array<std::map<CellIndex, size_t>, 3> x_index, q_index, z_index;

  const std::vector<CellIndex>& cells(Block blk, size_t degree) const {
    switch (blk) {
      case Block::X: return x_cells[degree];
      case Block::Q: return q_cells[degree];
      default: return z_cells[degree];
    }
  }
};

namespace detail {

/// One block family: a grid patch per layer. An axis whose factor places its
/// degree-1 cells on parity `p` steps exactly the coordinates with that
/// parity; stepping lowers the cell degree by one and moves to the +-1
/// neighbors within the doubled range [2, 2*chi].
struct BlockSpec {
  Block block;
  size_t layers;
  int chi_a, chi_b;
  int step_parity_a, step_parity_b;  // 0: integers step, 1: half-integers step
};

inline int cell_degree(const BlockSpec& s, int a, int b) {
  return (a % 2 == s.step_parity_a ? 1 : 0) + (b % 2 == s.step_parity_b ? 1 : 0);
}

inline void build_block(const BlockSpec& s, ChainComplex& out,
                        std::array<std::vector<CellIndex>, 3>& cells,
                        std::array<std::map<CellIndex, size_t>, 3>& index) {
  for (int d = 0; d < 3; d++) {
    cells[d].clear();
    index[d].clear();
  }
  for (size_t layer = 0; layer < s.layers; layer++) {
    for (int a = 2; a <= 2 * s.chi_a; a++) {
      for (int b = 2; b <= 2 * s.chi_b; b++) {
        int d = cell_degree(s, a, b);
        CellIndex c{s.block, layer, a, b};
        index[d][c] = cells[d].size();
        cells[d].push_back(c);
      }
    }
  }
  out = ChainComplex{};
  out.cells.resize(3);
  for (int d = 0; d < 3; d++) {
    for (const CellIndex& c : cells[d]) {
      out.cells[d].push_back(c.label());
    }
  }
  out.boundary.resize(2);
  for (int d = 2; d >= 1; d--) {
    BitMatrix m(cells[d - 1].size(), cells[d].size());
    for (size_t col = 0; col < cells[d].size(); col++) {
      const CellIndex& c = cells[d][col];
      if (c.a % 2 == s.step_parity_a) {
        for (int da : {-1, +1}) {
          int a2 = c.a + da;
          if (a2 >= 2 && a2 <= 2 * s.chi_a) {
            m.set(index[d - 1].at({s.block, c.layer, a2, c.b}), col, true);
          }
        }
      }
      if (c.b % 2 == s.step_parity_b) {
        for (int db : {-1, +1}) {
          int b2 = c.b + db;
          if (b2 >= 2 && b2 <= 2 * s.chi_b) {
            m.set(index[d - 1].at({s.block, c.layer, c.a, b2}), col, true);
          }
        }
      }
    }
    out.boundary[d - 1] = std::move(m);
  }
}

}  // namespace detail

/// Build the X-check, qubit, and Z-check patch families for the given colors.
/// X patches are chi_Q x chi_Z, qubit patches chi_X x chi_Z, Z patches
/// chi_X x chi_Q, with grid orientations fixed per block.
inline LayerBlocks build_blocks(const CssCode& code, const Coloring& c) {
  if (c.chi_x < 1 || c.chi_q < 1 || c.chi_z < 1) {
    throw std::invalid_argument("build_blocks: chi values must be at least 1");
  }
  LayerBlocks blocks;
  blocks.coloring = c;
  detail::build_block({Block::X, code.hx.rows, c.chi_q, c.chi_z, 0, 0}, blocks.cx,
                      blocks.x_cells, blocks.x_index);
  detail::build_block({Block::Q, code.n, c.chi_x, c.chi_z, 1, 0}, blocks.cq,
                      blocks.q_cells, blocks.q_index);
  detail::build_block({Block::Z, code.hz.rows, c.chi_x, c.chi_q, 1, 1}, blocks.cz,
                      blocks.z_cells, blocks.z_index);
  blocks.cx.validate();
  blocks.cq.validate();
  blocks.cz.validate();
  return blocks;
}

/// Degree-lowering maps between the blocks: the two gluing maps and the
/// defect homotopy. Index 2 maps degree-2 sources to degree-1 targets,
/// index 1 maps degree-1 sources to degree-0 targets.
struct GluingMaps {
  BitMatrix gqx2, gqx1;  // X block -> Q block
  BitMatrix gzq2, gzq1;  // Q block -> Z block
  BitMatrix pzx2, pzx1;  // X block -> Z block
};

namespace detail {

inline void require_valid_coloring(const CssCode& code, const Coloring& c) {
  ColoringReport rep = validate_coloring(code, c);
  if (!rep.valid()) {
    throw InvalidColoring(rep.summary());
  }
}

inline GluingMaps empty_maps(const LayerBlocks& blocks) {
  GluingMaps m;
  m.gqx2 = BitMatrix(blocks.q_cells[1].size(), blocks.x_cells[2].size());
  m.gqx1 = BitMatrix(blocks.q_cells[0].size(), blocks.x_cells[1].size());
  m.gzq2 = BitMatrix(blocks.z_cells[1].size(), blocks.q_cells[2].size());
  m.gzq1 = BitMatrix(blocks.z_cells[0].size(), blocks.q_cells[1].size());
  m.pzx2 = BitMatrix(blocks.z_cells[1].size(), blocks.x_cells[2].size());
  m.pzx1 = BitMatrix(blocks.z_cells[0].size(), blocks.x_cells[1].size());
  return m;
}

}  // namespace detail

/// Gluing maps. A degree-i cell (x, j, k) of an X patch with integer j maps
/// to (eta(x), q, k) in the patch of the unique q in the support of x colored
/// j (if any); cells with half-integer j map to zero. Likewise (i, q, k) with
/// integer k maps to (i, eta(q), z) for the unique z at q colored k.
inline GluingMaps build_gluing(const CssCode& code, const Coloring& c,
                               const LayerBlocks& blocks) {
  detail::require_valid_coloring(code, c);
  GluingMaps m = detail::empty_maps(blocks);
  auto x_supp = detail::rows_as_supports(code.hx);
  auto q_zs = detail::cols_as_supports(code.hz);

  for (int deg = 2; deg >= 1; deg--) {
    BitMatrix& g = deg == 2 ? m.gqx2 : m.gqx1;
    const auto& sources = blocks.x_cells[deg];
    for (size_t col = 0; col < sources.size(); col++) {
      const CellIndex& cell = sources[col];
      if (cell.a % 2 != 0) {
        continue;  // half-integer j
      }
      int j = cell.a / 2;
      for (size_t q : x_supp[cell.layer]) {
        if (c.eta_q[q] == j) {
          CellIndex target{Block::Q, q, 2 * c.eta_x[cell.layer], cell.b};
          g.set(blocks.q_index[deg - 1].at(target), col, true);
        }
      }
    }
  }
  for (int deg = 2; deg >= 1; deg--) {
    BitMatrix& g = deg == 2 ? m.gzq2 : m.gzq1;
    const auto& sources = blocks.q_cells[deg];
    for (size_t col = 0; col < sources.size(); col++) {
      const CellIndex& cell = sources[col];
      if (cell.b % 2 != 0) {
        continue;  // half-integer k
      }
      int k = cell.b / 2;
      for (size_t z : q_zs[cell.layer]) {
        if (c.eta_z[z] == k) {
          CellIndex target{Block::Z, z, cell.a, 2 * c.eta_q[cell.layer]};
          g.set(blocks.z_index[deg - 1].at(target), col, true);
        }
      }
    }
  }
  return m;
}

/// Defect map. A cell (x, j, k) with integer k = eta(z) for an overlapping z
/// maps to (eta(x), j + 1/2, z) exactly when j lies inside the string defect
/// of the pair; cells with half-integer k map to zero.
inline GluingMaps build_defect(const CssCode& code, const Coloring& c,
                               const LayerBlocks& blocks) {
  detail::require_valid_coloring(code, c);
  GluingMaps m = detail::empty_maps(blocks);
  auto x_supp = detail::rows_as_supports(code.hx);
  auto z_supp = detail::rows_as_supports(code.hz);

  // string defects of every overlapping pair
  std::map<size_t, std::vector<std::pair<size_t, StringDefect>>> defects_of_x;
  for (size_t x = 0; x < x_supp.size(); x++) {
    std::set<size_t> xs(x_supp[x].begin(), x_supp[x].end());
    for (size_t z = 0; z < z_supp.size(); z++) {
      bool overlap = false;
      for (size_t q : z_supp[z]) {
        if (xs.count(q)) {
          overlap = true;
          break;
        }
      }
      if (overlap) {
        defects_of_x[x].push_back({z, string_defect(x_supp[x], z_supp[z], c.eta_q)});
      }
    }
  }

  for (int deg = 2; deg >= 1; deg--) {
    BitMatrix& p = deg == 2 ? m.pzx2 : m.pzx1;
    const auto& sources = blocks.x_cells[deg];
    for (size_t col = 0; col < sources.size(); col++) {
      const CellIndex& cell = sources[col];
      if (cell.b % 2 != 0) {
        continue;  // half-integer k
      }
      int k = cell.b / 2;
      auto it = defects_of_x.find(cell.layer);
      if (it == defects_of_x.end()) {
        continue;
      }
      for (const auto& [z, defect] : it->second) {
        if (c.eta_z[z] == k && defect.contains_doubled(cell.a)) {
          CellIndex target{Block::Z, z, 2 * c.eta_x[cell.layer], cell.a + 1};
          p.set(blocks.z_index[deg - 1].at(target), col, true);
        }
      }
    }
  }
  return m;
}

inline GluingMaps build_maps(const CssCode& code, const Coloring& c,
                             const LayerBlocks& blocks) {
  GluingMaps m = build_gluing(code, c, blocks);
  GluingMaps p = build_defect(code, c, blocks);
  m.pzx2 = std::move(p.pzx2);
  m.pzx1 = std::move(p.pzx1);
  return m;
}

/// Outcome of the exact compatibility identities: the two chain-map
/// conditions and the homotopy condition that makes the assembled boundary
/// square to zero.
struct CompatibilityReport {
  bool chain_qx = false;  // dQ gQX = gQX dX
  bool chain_zq = false;  // dZ gZQ = gZQ dQ
  bool homotopy = false;  // gZQ gQX = dZ pZX + pZX dX
  std::string witness;    // failing source cell, when any

  bool ok() const { return chain_qx && chain_zq && homotopy; }
};

namespace detail {

inline BitMatrix mat_add(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw std::invalid_argument("mat_add: shape mismatch");
  }
  BitMatrix c = a;
  for (size_t w = 0; w < c.data.size(); w++) {
    c.data[w] ^= b.data[w];
  }
  return c;
}

inline std::optional<size_t> first_nonzero_col(const BitMatrix& m) {
  for (size_t j = 0; j < m.cols; j++) {
    if (m.col_weight(j) > 0) {
      return j;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline CompatibilityReport check_compatibility(const LayerBlocks& blocks,
                                               const GluingMaps& maps) {
  CompatibilityReport rep;
  BitMatrix r1 = detail::mat_add(mat_mul(blocks.cq.d1(), maps.gqx2),
                                 mat_mul(maps.gqx1, blocks.cx.d2()));
  rep.chain_qx = r1.is_zero();
  BitMatrix r2 = detail::mat_add(mat_mul(blocks.cz.d1(), maps.gzq2),
                                 mat_mul(maps.gzq1, blocks.cq.d2()));
  rep.chain_zq = r2.is_zero();
  BitMatrix r3 = detail::mat_add(
      mat_mul(maps.gzq1, maps.gqx2),
      detail::mat_add(mat_mul(blocks.cz.d1(), maps.pzx2),
                      mat_mul(maps.pzx1, blocks.cx.d2())));
  rep.homotopy = r3.is_zero();
  if (!rep.chain_qx) {
    rep.witness = "dQ gQX != gQX dX at " +
                  blocks.x_cells[2][*detail::first_nonzero_col(r1)].label();
  } else if (!rep.chain_zq) {
    rep.witness = "dZ gZQ != gZQ dQ at " +
                  blocks.q_cells[2][*detail::first_nonzero_col(r2)].label();
  } else if (!rep.homotopy) {
    rep.witness = "gZQ gQX != dZ pZX + pZX dX at " +
                  blocks.x_cells[2][*detail::first_nonzero_col(r3)].label();
  }
  return rep;
}

/// The assembled code together with the tables mapping matrix indices back
/// to layer cells.
struct LayerAssembly {
  LayerBlocks blocks;
  GluingMaps maps;
  ChainComplex complex;
  std::vector<CellIndex> cells2, cells1, cells0;
};

/// Direct sum of the blocks with the lower-triangular boundary: the diagonal
/// holds the patch boundaries, the subdiagonals the gluing maps, and the
/// corner the defect map.
inline LayerAssembly assemble(const LayerBlocks& blocks, const GluingMaps& maps) {
  CompatibilityReport rep = check_compatibility(blocks, maps);
  if (!rep.ok()) {
    throw CompatibilityError("assemble: " + rep.witness);
  }
  LayerAssembly out;
  out.blocks = blocks;
  out.maps = maps;
  for (int d = 0; d < 3; d++) {
    auto& cells = d == 0 ? out.cells0 : (d == 1 ? out.cells1 : out.cells2);
    cells.insert(cells.end(), blocks.x_cells[d].begin(), blocks.x_cells[d].end());
    cells.insert(cells.end(), blocks.q_cells[d].begin(), blocks.q_cells[d].end());
    cells.insert(cells.end(), blocks.z_cells[d].begin(), blocks.z_cells[d].end());
  }

  auto place = [](BitMatrix& dst, const BitMatrix& src, size_t r0, size_t c0) {
    for (size_t i = 0; i < src.rows; i++) {
      for (size_t w = 0; w < src.stride; w++) {
        uint64_t word = src.data[i * src.stride + w];
        while (word) {
          dst.set(r0 + i, c0 + w * 64 + std::countr_zero(word), true);
          word &= word - 1;
        }
      }
    }
  };

  std::array<size_t, 3> xo{}, qo{}, zo{};  // block offsets per degree
  for (int d = 0; d < 3; d++) {
    xo[d] = 0;
    qo[d] = blocks.x_cells[d].size();
    zo[d] = qo[d] + blocks.q_cells[d].size();
  }

  BitMatrix d2(out.cells1.size(), out.cells2.size());
  place(d2, blocks.cx.d2(), xo[1], xo[2]);
  place(d2, maps.gqx2, qo[1], xo[2]);
  place(d2, maps.pzx2, zo[1], xo[2]);
  place(d2, blocks.cq.d2(), qo[1], qo[2]);
  place(d2, maps.gzq2, zo[1], qo[2]);
  place(d2, blocks.cz.d2(), zo[1], zo[2]);

  BitMatrix d1(out.cells0.size(), out.cells1.size());
  place(d1, blocks.cx.d1(), xo[0], xo[1]);
  place(d1, maps.gqx1, qo[0], xo[1]);
  place(d1, maps.pzx1, zo[0], xo[1]);
  place(d1, blocks.cq.d1(), qo[0], qo[1]);
  place(d1, maps.gzq1, zo[0], qo[1]);
  place(d1, blocks.cz.d1(), zo[0], zo[1]);

  out.complex.cells.resize(3);
  for (int d = 0; d < 3; d++) {
    auto& cells = d == 0 ? out.cells0 : (d == 1 ? out.cells1 : out.cells2);
    for (const CellIndex& c : cells) {
      out.complex.cells[d].push_back(c.label());
    }
  }
  out.complex.boundary = {std::move(d1), std::move(d2)};
  out.complex.validate();
  return out;
}

inline CssCode assembled_code(const LayerAssembly& a) { return to_css(a.complex); }

namespace detail {

/// Canonical representatives of the block homology bases: all degree-2 cells
/// of a layer for H2 of the X block, the i = 1 column of a layer for H1 of
/// the Q block, the (1, 1) cell for H0 of a Z layer.
inline BitMatrix q_representatives(const LayerBlocks& blocks, size_t n_qubits) {
  BitMatrix reps(blocks.q_cells[1].size(), n_qubits);
  for (size_t q = 0; q < n_qubits; q++) {
    for (int k = 1; k <= blocks.coloring.chi_z; k++) {
      reps.set(blocks.q_index[1].at({Block::Q, q, 2, 2 * k}), q, true);
    }
  }
  return reps;
}

inline BitMatrix z_representatives(const LayerBlocks& blocks, size_t n_z) {
  BitMatrix reps(blocks.z_cells[0].size(), n_z);
  for (size_t z = 0; z < n_z; z++) {
    reps.set(blocks.z_index[0].at({Block::Z, z, 2, 2}), z, true);
  }
  return reps;
}

}  // namespace detail

/// The input code recovered from homology. Computes the maps induced by the
/// gluing maps on the block homologies in the canonical bases, reducing
/// modulo boundaries, and checks they reproduce (Hx^T, Hz) exactly.
struct EmbeddedComplex {
  BitMatrix hx;
  BitMatrix hz;
};

inline EmbeddedComplex embedded_complex(const LayerAssembly& a, const CssCode& input) {
  const LayerBlocks& blocks = a.blocks;
  size_t nx = input.hx.rows, nq = input.n, nz = input.hz.rows;

  // [gQX]: H2(X block) -> H1(Q block), expressed in the canonical bases
  BitMatrix vx(blocks.q_cells[1].size(), nx);
  for (size_t col = 0; col < blocks.x_cells[2].size(); col++) {
    size_t x = blocks.x_cells[2][col].layer;
    for (size_t r = 0; r < a.maps.gqx2.rows; r++) {
      if (a.maps.gqx2.get(r, col)) {
        vx.set(r, x, !vx.get(r, x));
      }
    }
  }
  BitMatrix q_reps = detail::q_representatives(blocks, nq);
  SolveMany sx = solve_many(hstack(blocks.cq.d2(), q_reps), vx);
  EmbeddedComplex rec;
  rec.hx = BitMatrix(nx, nq);
  for (size_t x = 0; x < nx; x++) {
    if (!sx.ok[x]) {
      throw MismatchError("embedded_complex: image of X layer " + std::to_string(x) +
                          " is not spanned by the qubit classes");
    }
    for (size_t q = 0; q < nq; q++) {
      if (sx.solutions.get(blocks.cq.d2().cols + q, x)) {
        rec.hx.set(x, q, true);
      }
    }
  }

  // [gZQ]: H1(Q block) -> H0(Z block)
  BitMatrix vq = mat_mul(a.maps.gzq1, q_reps);
  BitMatrix z_reps = detail::z_representatives(blocks, nz);
  SolveMany sz = solve_many(hstack(blocks.cz.d1(), z_reps), vq);
  rec.hz = BitMatrix(nz, nq);
  for (size_t q = 0; q < nq; q++) {
    if (!sz.ok[q]) {
      throw MismatchError("embedded_complex: image of qubit layer " + std::to_string(q) +
                          " is not spanned by the Z classes");
    }
    for (size_t z = 0; z < nz; z++) {
      if (sz.solutions.get(blocks.cz.d1().cols + z, q)) {
        rec.hz.set(z, q, true);
      }
    }
  }

  if (!(rec.hx == input.hx)) {
    for (size_t x = 0; x < nx; x++) {
      if (!(rec.hx.row(x) == input.hx.row(x))) {
        throw MismatchError("embedded_complex: recovered X-check " + std::to_string(x) +
                            " differs from the input");
      }
    }
  }
  if (!(rec.hz == input.hz)) {
    for (size_t q = 0; q < nq; q++) {
      if (!(rec.hz.col(q) == input.hz.col(q))) {
        throw MismatchError("embedded_complex: recovered Z-incidence of qubit " +
                            std::to_string(q) + " differs from the input");
      }
    }
  }
  return rec;
}

/// Lift an X-logical of the input code to a certified X-logical of the
/// assembled code: the qubit-layer part sums the i = 1 column of every
/// supported layer, and the Z-layer part solves the boundary equation that
/// cancels the gluing image.
inline BitVector lift_logical(const LayerAssembly& a, const CssCode& input,
                              const BitVector& logical_in) {
  if (logical_in.length != input.n) {
    throw std::invalid_argument("lift_logical: representative has wrong length");
  }
  if (!mat_vec(input.hz, logical_in).is_zero()) {
    throw NotALogical("lift_logical: representative anticommutes with a Z-check");
  }
  if (rref(input.hx).in_row_space(logical_in)) {
    throw NotALogical("lift_logical: representative is a stabilizer");
  }
  const LayerBlocks& blocks = a.blocks;
  BitVector lq(blocks.q_cells[1].size());
  for (size_t q : logical_in.support()) {
    for (int k = 1; k <= blocks.coloring.chi_z; k++) {
      lq.set(blocks.q_index[1].at({Block::Q, q, 2, 2 * k}), true);
    }
  }
  BitVector rhs = mat_vec(a.maps.gzq1, lq);
  std::optional<BitVector> lz = solve(blocks.cz.d1(), rhs);
  if (!lz) {
    throw SolveFailed("lift_logical: boundary equation in the Z block is inconsistent");
  }
  BitVector lifted(a.cells1.size());
  size_t q_off = blocks.x_cells[1].size();
  size_t z_off = q_off + blocks.q_cells[1].size();
  for (size_t i : lq.support()) {
    lifted.set(q_off + i, true);
  }
  for (size_t i : lz->support()) {
    lifted.set(z_off + i, true);
  }
  if (!mat_vec(a.complex.d1(), lifted).is_zero()) {
    throw SolveFailed("lift_logical: lifted vector fails the kernel condition");
  }
  if (rref(a.complex.d2().transposed()).in_row_space(lifted)) {
    throw SolveFailed("lift_logical: lifted vector is a stabilizer of the output");
  }
  return lifted;
}

/// Proven distance bound of the assembled code:
/// d_alpha(C) >= min(chi_complement, 2 chi_Q) * d_alpha(A) / w_alpha.
inline Rational distance_lower_bound(const WeightProfile& input_profile, int chi_x,
                                     int chi_q, int chi_z, Side side,
                                     size_t input_distance) {
  size_t w = side == Side::X ? input_profile.wx : input_profile.wz;
  if (w == 0) {
    throw std::invalid_argument("distance_lower_bound: input has no checks of that type");
  }
  long long chi_bar = side == Side::X ? chi_z : chi_x;
  long long factor = std::min(chi_bar, 2LL * chi_q);
  return Rational(factor * static_cast<long long>(input_distance),
                  static_cast<long long>(w));
}

/// End-to-end summary of one sparsification run.
struct SparsifyReport {
  size_t n_in = 0, k_in = 0, n_out = 0, k_out = 0;
  WeightProfile profile_in, profile_out;
  int chi_x = 0, chi_q = 0, chi_z = 0;
  std::string coloring_source;
  size_t x_qubits = 0, q_qubits = 0, z_qubits = 0;
  bool dd_zero = false;
  bool compatibility = false;
  bool embedded_match = false;
  bool h1x_zero = false;
  bool h1z_zero = false;
  bool k_preserved = false;
  Rational bound_coeff_x, bound_coeff_z;  // multiply by d_alpha(A)

  bool all_ok() const {
    return dd_zero && compatibility && embedded_match && h1x_zero && h1z_zero &&
           k_preserved;
  }
};

struct SparsifyResult {
  CssCode input;
  Coloring coloring;
  LayerAssembly assembly;
  CssCode output;
  SparsifyReport report;
};

/// The whole pipeline: build the induced graphs, color them (or validate the
/// supplied coloring), build blocks and maps, verify compatibility, assemble,
/// and verify the structural guarantees on the result.
inline SparsifyResult sparsify(const CssCode& input,
                               std::optional<Coloring> supplied = std::nullopt,
                               std::optional<std::array<int, 3>> chi_override = std::nullopt) {
  input.validate();
  SparsifyResult res;
  res.input = input;
  SparsifyReport& rep = res.report;
  rep.n_in = input.n;
  rep.k_in = input.logical_dimension();
  rep.profile_in = weight_profile(input);

  if (supplied) {
    res.coloring = *supplied;
    rep.coloring_source = "supplied";
  } else {
    res.coloring = color_from_graphs(build_induced_graphs(input));
    rep.coloring_source = "greedy";
  }
  Coloring& col = res.coloring;
  auto max_color = [](const std::vector<int>& eta) {
    int m = 1;
    for (int c : eta) {
      m = std::max(m, c);
    }
    return m;
  };
  col.chi_x = std::max(col.chi_x, max_color(col.eta_x));
  col.chi_q = std::max(col.chi_q, max_color(col.eta_q));
  col.chi_z = std::max(col.chi_z, max_color(col.eta_z));
  if (chi_override) {
    col.chi_x = std::max(col.chi_x, (*chi_override)[0]);
    col.chi_q = std::max(col.chi_q, (*chi_override)[1]);
    col.chi_z = std::max(col.chi_z, (*chi_override)[2]);
  }
  rep.chi_x = col.chi_x;
  rep.chi_q = col.chi_q;
  rep.chi_z = col.chi_z;

  LayerBlocks blocks = build_blocks(input, col);
  GluingMaps maps = build_maps(input, col, blocks);
  rep.compatibility = check_compatibility(blocks, maps).ok();
  res.assembly = assemble(blocks, maps);  // throws when incompatible
  res.output = assembled_code(res.assembly);
  rep.dd_zero = mat_mul(res.assembly.complex.d1(), res.assembly.complex.d2()).is_zero();

  rep.x_qubits = res.assembly.blocks.x_cells[1].size();
  rep.q_qubits = res.assembly.blocks.q_cells[1].size();
  rep.z_qubits = res.assembly.blocks.z_cells[1].size();
  rep.n_out = res.output.n;
  rep.k_out = logical_dimension(res.assembly.complex);
  rep.k_preserved = rep.k_out == rep.k_in;
  rep.profile_out = weight_profile(res.assembly.complex);
  rep.h1x_zero = res.assembly.blocks.cx.homology_dim(1) == 0;
  rep.h1z_zero = res.assembly.blocks.cz.homology_dim(1) == 0;
  try {
    embedded_complex(res.assembly, input);
    rep.embedded_match = true;
  } catch (const MismatchError&) {
    rep.embedded_match = false;
  }
  if (rep.profile_in.wx > 0) {
    rep.bound_coeff_x = Rational(std::min<long long>(col.chi_z, 2LL * col.chi_q),
                                 rep.profile_in.wx);
  }
  if (rep.profile_in.wz > 0) {
    rep.bound_coeff_z = Rational(std::min<long long>(col.chi_x, 2LL * col.chi_q),
                                 rep.profile_in.wz);
  }
  return res;
}

}  // namespace layerwr
