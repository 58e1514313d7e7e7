// Copyright 2026 The sharediar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sharediar/mpc/network.h"
#include "sharediar/mpc/scheme.h"

namespace sharediar::mpc {

enum class GateKind { kInput, kConst, kAdd, kSub, kMulConst, kMul, kOpen };

struct Gate {
  GateKind kind;
  int a = -1;
  int b = -1;
  PartyId owner = 0;         // kInput
  std::uint64_t value = 0;   // kConst, kMulConst
};

// A DAG of ring gates over scalar wires. Gates can only reference wires
// created before them, so insertion order is a topological order.
class Circuit {
 public:
  int input(PartyId owner);
  int constant(std::uint64_t c);
  int add(int a, int b);
  int sub(int a, int b);
  int mul_const(int a, std::uint64_t c);
  int mul(int a, int b);
  // Marks a wire for opening to every party; outputs keep this order.
  void open(int a);

  const std::vector<Gate>& gates() const { return gates_; }
  int inputs() const { return inputs_; }
  int outputs() const { return outputs_; }
  // Multiplicative depth of wire `w` (0 for linear functions of inputs).
  int depth(int w) const { return depth_[w]; }

 private:
  int push(Gate g, int depth);
  void check(int w) const;

  std::vector<Gate> gates_;
  std::vector<int> depth_;
  int inputs_ = 0;
  int outputs_ = 0;
};

struct CircuitRun {
  std::vector<std::uint64_t> outputs;
  // Input and online traffic only; setup seeds are excluded.
  NetStats stats;
};

// Evaluates the circuit round by round: one input round per owner, one
// round per multiplicative depth (all products at that depth batched), one
// final round opening every output. `inputs` follows input() call order.
CircuitRun run_protocol(const Circuit& circuit, std::span<const std::uint64_t> inputs,
                        const Scheme& scheme, SimNetwork& net, std::uint64_t seed);

}  // namespace sharediar::mpc
