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

#include "sharediar/mpc/circuit.h"

#include <algorithm>
#include <map>
#include <optional>

#include "sharediar/error.h"
#include "sharediar/mpc/protocol.h"

namespace sharediar::mpc {

void Circuit::check(int w) const {
  if (w < 0 || w >= static_cast<int>(gates_.size())) {
    throw ParameterError("circuit wire " + std::to_string(w) + " does not exist");
  }
  if (gates_[w].kind == GateKind::kOpen) throw ParameterError("open gates have no value");
}

int Circuit::push(Gate g, int depth) {
  gates_.push_back(g);
  depth_.push_back(depth);
  return static_cast<int>(gates_.size()) - 1;
}

int Circuit::input(PartyId owner) {
  ++inputs_;
  return push({GateKind::kInput, -1, -1, owner, 0}, 0);
}

int Circuit::constant(std::uint64_t c) { return push({GateKind::kConst, -1, -1, 0, c}, 0); }

int Circuit::add(int a, int b) {
  check(a);
  check(b);
  return push({GateKind::kAdd, a, b}, std::max(depth_[a], depth_[b]));
}

int Circuit::sub(int a, int b) {
  check(a);
  check(b);
  return push({GateKind::kSub, a, b}, std::max(depth_[a], depth_[b]));
}

int Circuit::mul_const(int a, std::uint64_t c) {
  check(a);
  return push({GateKind::kMulConst, a, -1, 0, c}, depth_[a]);
}

int Circuit::mul(int a, int b) {
  check(a);
  check(b);
  return push({GateKind::kMul, a, b}, std::max(depth_[a], depth_[b]) + 1);
}

void Circuit::open(int a) {
  check(a);
  ++outputs_;
  push({GateKind::kOpen, a}, depth_[a]);
}

CircuitRun run_protocol(const Circuit& circuit, std::span<const std::uint64_t> inputs,
                        const Scheme& scheme, SimNetwork& net, std::uint64_t seed) {
  if (static_cast<int>(inputs.size()) != circuit.inputs()) {
    throw DimensionError("circuit expects " + std::to_string(circuit.inputs()) +
                         " inputs, got " + std::to_string(inputs.size()));
  }
  Protocol proto(scheme, net, seed);
  const NetStats before = net.total();
  const Phase saved = net.phase();
  const auto& gates = circuit.gates();
  std::vector<std::optional<Shared>> wire(gates.size());

  // Inputs: one batched sharing round per owner.
  net.set_phase(Phase::kInput);
  std::map<PartyId, std::vector<std::size_t>> by_owner;
  for (std::size_t g = 0, k = 0; g < gates.size(); ++g) {
    if (gates[g].kind == GateKind::kInput) by_owner[gates[g].owner].push_back(k++);
  }
  {
    std::vector<std::size_t> input_gate;
    for (std::size_t g = 0; g < gates.size(); ++g) {
      if (gates[g].kind == GateKind::kInput) input_gate.push_back(g);
    }
    for (const auto& [owner, idx] : by_owner) {
      RingVec values;
      for (std::size_t k : idx) values.push_back(inputs[k]);
      const Shared s = proto.input(owner, values, Domain::kArith);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        wire[input_gate[idx[j]]] = Protocol::slice(s, j, 1);
      }
    }
  }

  net.set_phase(Phase::kOnline);
  int max_depth = 0;
  for (std::size_t g = 0; g < gates.size(); ++g) max_depth = std::max(max_depth, circuit.depth(g));

  // Level by level: linear gates of depth d need only wires of depth <= d,
  // products of depth d need operands of depth d - 1.
  auto eval_linear = [&](int level) {
    for (std::size_t g = 0; g < gates.size(); ++g) {
      const Gate& gt = gates[g];
      if (circuit.depth(g) != level || wire[g]) continue;
      switch (gt.kind) {
        case GateKind::kConst:
          wire[g] = proto.add_public(proto.zeros(1, Domain::kArith), gt.value);
          break;
        case GateKind::kAdd:
          wire[g] = proto.add(*wire[gt.a], *wire[gt.b]);
          break;
        case GateKind::kSub:
          wire[g] = proto.sub(*wire[gt.a], *wire[gt.b]);
          break;
        case GateKind::kMulConst:
          wire[g] = proto.mul_public(*wire[gt.a], gt.value);
          break;
        default:
          break;
      }
    }
  };

  eval_linear(0);
  for (int level = 1; level <= max_depth; ++level) {
    std::vector<std::size_t> muls;
    std::vector<const Shared*> lhs, rhs;
    for (std::size_t g = 0; g < gates.size(); ++g) {
      if (gates[g].kind == GateKind::kMul && circuit.depth(g) == level) {
        muls.push_back(g);
        lhs.push_back(&*wire[gates[g].a]);
        rhs.push_back(&*wire[gates[g].b]);
      }
    }
    const Shared prod = proto.mul(Protocol::concat(lhs), Protocol::concat(rhs));
    for (std::size_t j = 0; j < muls.size(); ++j) wire[muls[j]] = Protocol::slice(prod, j, 1);
    eval_linear(level);
  }

  CircuitRun run;
  std::vector<const Shared*> outs;
  for (const Gate& gt : gates) {
    if (gt.kind == GateKind::kOpen) outs.push_back(&*wire[gt.a]);
  }
  if (!outs.empty()) run.outputs = proto.open(Protocol::concat(outs));
  net.set_phase(saved);
  run.stats = net.total().since(before);
  return run;
}

}  // namespace sharediar::mpc
