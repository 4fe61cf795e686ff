// Copyright 2026 The tsenc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "tsenc/audit.hpp"
#include "tsenc/core.hpp"
#include "tsenc/dataset_io.hpp"
#include "tsenc/error.hpp"
#include "tsenc/key.hpp"
#include "tsenc/metrics.hpp"
#include "tsenc/mi.hpp"
#include "tsenc/nn.hpp"
#include "tsenc/pipeline.hpp"
#include "tsenc/qsim.hpp"
#include "tsenc/rng.hpp"
#include "tsenc/rproj.hpp"
#include "tsenc/sha256.hpp"
