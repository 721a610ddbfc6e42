#pragma once

#include <cstdint>
#include <string>

namespace gjb {

// Desk-scale reproduction of the published model/simulation tables.
// Parameter tables print the engine's computed sigma beside the reference
// value and flag disagreement; simulation tables run the replication
// protocol at the reference sample sizes scaled by `scale`.
struct TableOptions {
  double scale = 1.0;
  int B = 1000;
  std::uint64_t seed = 1;
};

// id: normal-params | dexp-params | normal-sim | dexp-vs-normal |
//     dgamma-vs-normal | dexp-sim.  UnknownTable otherwise.
std::string reproduce_table(const std::string& id, const TableOptions& opt = {});
std::string reproduce_table_json(const std::string& id,
                                 const TableOptions& opt = {});

}  // namespace gjb
