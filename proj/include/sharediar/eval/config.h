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

#include <map>
#include <string>
#include <string_view>

#include "sharediar/diar/pipeline.h"

namespace sharediar::eval {

using KeyValues = std::map<std::string, std::string>;

// "key = value" per line; '#' starts a comment. Later keys override
// earlier ones. Lines without '=' raise ParseError.
KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::string& path);

// Applies the pipeline keys it knows and returns the rest:
//   codec.frac_bits codec.int_bits trunc.value_bits trunc.stat_sec
//   tdnn.preset (desk|full) features.n_coeffs features.cmn
//   segment.window segment.shift smh.k smh.delta smh.mpc
//   scheme seed sub_batch
KeyValues apply_config(const KeyValues& values, diar::PipelineConfig& config);

}  // namespace sharediar::eval
