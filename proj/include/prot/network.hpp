#pragma once

#include "prot/hysteron.hpp"

#include <string>
#include <vector>

namespace prot {

enum class BlockKind { Input, Output, Relay, Gain, Sum };

// Feedforward block network evaluated in a fixed topological order once per
// sample. Built from a line-oriented description:
//
//   # comment
//   block <name> input
//   block <name> output
//   block <name> sum
//   block <name> gain k=<real>
//   block <name> relay <noninverting|inverting> set=<real> reset=<real> init=<0|1>
//   wire <src> -> <dst>
//
// Exactly one input and one output block; the graph must be acyclic, every
// block reachable from the input, and the output reachable from every block.
// Relay blocks carry state across steps; everything else is stateless.
class BlockNetwork {
 public:
  static BlockNetwork build(const std::string& description);

  double step(double x);

  int block_count() const { return static_cast<int>(blocks_.size()); }

 private:
  struct Block {
    BlockKind kind;
    std::string name;
    RelaySpec relay_spec{};
    int relay_state = 0;
    double gain = 1.0;
  };

  BlockNetwork() = default;

  std::vector<Block> blocks_;
  std::vector<std::vector<int>> inputs_;  // upstream block indices, wire order
  std::vector<int> order_;                // topological evaluation order
  std::vector<double> values_;
  int input_index_ = -1;
  int output_index_ = -1;
};

// Description of the standard two-relay anticipatory cell as a block netlist,
// with relay initial states derived from holding x0 (same convention as
// ProtereticCell).
std::string cell_network_description(double a, double b, double x0);

}  // namespace prot
