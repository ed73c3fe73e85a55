#include "hwm/reference_grids.hpp"

namespace hwm {

const std::vector<ReferenceGrid>& reference_grids() {
  static const std::vector<ReferenceGrid> grids = [] {
    std::vector<ReferenceGrid> g;

    ReferenceGrid g1;
    g1.id = 1;
    g1.sigma = 0.20;
    g1.blocks = {{85.0, 0.10, 0.15}, {100.0, 0.10, 0.15}, {115.0, 0.10, 0.15}};
    g.push_back(g1);

    ReferenceGrid g2;
    g2.id = 2;
    g2.sigma = 0.20;
    g2.blocks = {{85.0, 0.15, 0.20}, {100.0, 0.15, 0.20}, {115.0, 0.15, 0.20}};
    g.push_back(g2);

    ReferenceGrid g3;
    g3.id = 3;
    g3.sigma = 0.40;
    g3.blocks = {{85.0, 0.10, 0.15}, {100.0, 0.10, 0.15}, {115.0, 0.10, 0.15}};
    g.push_back(g3);

    ReferenceGrid g4;
    g4.id = 4;
    g4.sigma = 0.40;
    g4.blocks = {{85.0, 0.15, 0.20}, {100.0, 0.15, 0.20}, {115.0, 0.15, 0.20}};
    g4.alt_blocks = {{85.0, 0.15, 0.20}, {100.0, 0.10, 0.15}, {115.0, 0.10, 0.15}};
    g4.note =
        "upstream table title says alpha=15%, mu=20% while its second and third "
        "block headers say alpha=10%, mu=15%; rows are emitted under both "
        "readings (param_set column) and the title reading matches the "
        "reference values";
    g.push_back(g4);

    ReferenceGrid g5;
    g5.id = 5;
    g5.sigma = 0.20;
    g5.mgmt = 0.003;
    g5.incentive = 0.0;
    g5.fee_free = true;
    g5.blocks = {{100.0, 0.0, 0.0}};
    g5.note =
        "upstream table header quotes 40% volatility, but its values are "
        "consistent with 20%, which this grid uses";
    g.push_back(g5);

    return g;
  }();
  return grids;
}

}  // namespace hwm
