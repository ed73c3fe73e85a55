#pragma once
// Built-in parameter grids behind the `tables` CLI command: three
// trigger-level blocks priced over a strike x maturity grid, plus a
// fee-free grid checked against the Merton closed form.

#include <vector>

#include "hwm/types.hpp"

namespace hwm {

struct GridBlock {
  double hwm;
  double alpha;
  double mu;
};

struct ReferenceGrid {
  int id = 0;
  double spot = 100.0;
  double sigma = 0.2;
  double rate = 0.02;
  double mgmt = 0.02;
  double incentive = 0.20;
  std::vector<GridBlock> blocks;      // primary parameter reading
  std::vector<GridBlock> alt_blocks;  // alternate reading of the block headers, if any
  bool fee_free = false;              // incentive off; adds a Merton reference column
  const char* note = nullptr;         // header ambiguity surfaced in JSON output
};

const std::vector<ReferenceGrid>& reference_grids();

inline const std::vector<double>& grid_strike_fractions() {
  static const std::vector<double> k{0.9, 1.0, 1.1};
  return k;
}

inline const std::vector<double>& grid_maturities() {
  static const std::vector<double> t{0.5, 1.0};
  return t;
}

}  // namespace hwm
