// Copyright 2026 The ccauchy Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Umbrella header for the numeric core. JSON/CSV formats live in io.hpp and
// the verification suite in verify.hpp; both pull in the vendored
// nlohmann/json header, so they are opt-in.

#pragma once

#include "ccauchy/cauchy.hpp"
#include "ccauchy/errors.hpp"
#include "ccauchy/linalg.hpp"
#include "ccauchy/mobius.hpp"
#include "ccauchy/rng.hpp"
#include "ccauchy/stats.hpp"
