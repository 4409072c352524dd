#pragma once

#include "layerwr/chain.hpp"
#include "layerwr/coloring.hpp"

namespace fixtures {

// Hx = [110], Hz = [111]: one X-check on the first two qubits, one Z-check
// on all three.
inline layerwr::CssCode tri() {
  return layerwr::CssCode(layerwr::BitMatrix::from_rows(3, {{0, 1}}),
                          layerwr::BitMatrix::from_rows(3, {{0, 1, 2}}));
}

inline layerwr::CssCode shor() {
  return layerwr::CssCode(
      layerwr::BitMatrix::from_rows(9, {{0, 1, 2, 3, 4, 5}, {3, 4, 5, 6, 7, 8}}),
      layerwr::BitMatrix::from_rows(9, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}}));
}

// Hamming(7,4) parity checks for both sides.
inline layerwr::CssCode steane() {
  std::vector<std::vector<size_t>> rows = {{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}};
  return layerwr::CssCode(layerwr::BitMatrix::from_rows(7, rows),
                          layerwr::BitMatrix::from_rows(7, rows));
}

// The worked Shor coloring with chi_X = chi_Z = 2 and chi_Q = 6.
inline layerwr::Coloring shor_coloring() {
  layerwr::Coloring c;
  c.eta_x = {1, 2};
  c.eta_q = {1, 2, 3, 4, 5, 6, 1, 2, 3};
  c.eta_z = {1, 2, 1, 2, 1, 2};
  c.chi_x = 2;
  c.chi_q = 6;
  c.chi_z = 2;
  return c;
}

inline layerwr::Coloring tri_coloring() {
  layerwr::Coloring c;
  c.eta_x = {1};
  c.eta_q = {1, 2, 3};
  c.eta_z = {1};
  c.chi_x = 1;
  c.chi_q = 3;
  c.chi_z = 1;
  return c;
}

}  // namespace fixtures
