// SPDX-License-Identifier: Apache-2.0
//
// holofuse: channel-aware holographic decision fusion toolkit
// Copyright (C) 2026 The holofuse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "holofuse/channel.hpp"
#include "holofuse/evaluation.hpp"
#include "holofuse/geometry.hpp"
#include "holofuse/optimizer.hpp"

#include <string>

namespace holofuse {

// Shortest decimal text that reads back to the same double ("inf", "-inf",
// "nan" for non-finite values).
std::string format_double(double value);

// Positions, frames and spacings, for provenance.
std::string scene_to_json(const Scene& scene);

// {"H": {"rows", "cols", "re", "im"}, "G": ..., "H_dig": ..., "blocked_sensors": [...]}
// with row-major entries.
std::string channels_to_json(const ChannelSet& channels);
ChannelSet channels_from_json(const std::string& text);

// {"iterations", "termination", "records": [{"iteration", "objective", "elapsed_seconds"}]}
std::string ao_trace_to_json(const AoTrace& trace);

// Header "gamma,pf0,pd0,se_pf0,se_pd0" and one row per curve point.
std::string roc_to_csv(const RocCurve& curve);

}  // namespace holofuse
