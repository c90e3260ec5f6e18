#pragma once

#include "nolhd/design.hpp"
#include "nolhd/matrix.hpp"

namespace nolhd::fixtures {

// Reference designs bundled with the project (also shipped under fixtures/
// as CSV). example1_b is a 7-run, 12-factor nearly orthogonal hypercube;
// the example2 set are the published ingredients of a 96 x 24 block
// construction (kept verbatim, including their known defects -- see the
// fixture tests).

inline DesignMatrix example1_b() {
  return {Matrix::from_rows({
              {-3, 0, -1, 0, 3, 3, 0, -2, 1, -3, -1, -3},
              {-2, -1, 1, -3, -1, -3, 1, -3, -2, -1, 1, 3},
              {-1, 3, 0, 3, 0, -2, 2, 0, -1, 3, -3, -1},
              {0, -2, 3, 2, -2, 2, -2, 1, -3, 1, 2, -2},
              {1, 1, -3, -1, -3, 1, -3, -1, 3, 2, 0, 1},
              {2, -3, -2, 1, 1, -1, 3, 2, 2, 0, 3, 0},
              {3, 2, 2, -2, 2, 0, -1, 3, 0, -2, -2, 2},
          }),
          DesignKind::latin_hypercube};
}

inline DesignMatrix example2_b() {
  return {Matrix::from_rows({
              {0.5, -1.5, 3.5, 2.5},
              {1.5, 0.5, 2.5, -3.5},
              {2.5, -3.5, -1.5, -0.5},
              {3.5, 2.5, -0.5, 1.5},
              {-0.5, 1.5, -3.5, -2.5},
              {-1.5, -0.5, -2.5, 3.5},
              {-2.5, 3.5, 1.5, 0.5},
              {-3.5, -2.5, 0.5, -1.5},
          }),
          DesignKind::latin_hypercube};
}

inline SignMatrix example2_d() {
  return SignMatrix(Matrix::from_rows({
      {1, 1, 1, 1},
      {1, 1, -1, -1},
      {1, -1, 1, -1},
      {1, -1, -1, 1},
      {-1, 1, 1, 1},
      {-1, 1, -1, -1},
      {-1, -1, 1, -1},
      {-1, -1, -1, 1},
  }));
}

inline SignMatrix example2_a1() {
  return SignMatrix(Matrix::from_rows({
      {1, 1, 1, 1, 1, 1},
      {1, -1, 1, 1, 1, -1},
      {-1, 1, -1, 1, 1, 1},
      {-1, -1, 1, -1, 1, 1},
      {1, -1, -1, 1, -1, 1},
      {-1, 1, -1, -1, 1, -1},
      {-1, -1, 1, -1, -1, 1},
      {-1, -1, -1, 1, -1, -1},
      {1, -1, -1, -1, 1, -1},
      {1, 1, -1, -1, -1, 1},
      {1, 1, 1, -1, -1, -1},
      {-1, 1, 1, 1, -1, -1},
  }));
}

inline DesignMatrix example2_c1() {
  return {Matrix::from_rows({
              {-5.5, -4.5, 4.5, 5.5, 2.5, 0.5},
              {-4.5, 2.5, -0.5, -2.5, -4.5, 5.5},
              {-3.5, 5.5, -1.5, 1.5, 0.5, -3.5},
              {-2.5, -0.5, -4.5, -4.5, -0.5, -4.5},
              {-1.5, -3.5, 2.5, -5.5, 3.5, -0.5},
              {-0.5, 4.5, -3.5, 2.5, 4.5, 2.5},
              {0.5, -1.5, 3.5, -3.5, -3.5, 1.5},
              {1.5, -5.5, -5.5, 4.5, -5.5, -1.5},
              {2.5, 3.5, 5.5, 3.5, -2.5, -2.5},
              {3.5, -2.5, -2.5, 0.5, 5.5, 3.5},
              {4.5, 0.5, 1.5, -1.5, 1.5, -5.5},
              {5.5, 1.5, 0.5, -0.5, -1.5, 4.5},
          }),
          DesignKind::latin_hypercube};
}

}  // namespace nolhd::fixtures
