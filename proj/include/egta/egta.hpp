// Copyright 2026 The egta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Umbrella header for the whole library.

#ifndef EGTA_EGTA_HPP_
#define EGTA_EGTA_HPP_

#include "egta/concentration.hpp"
#include "egta/experiments.hpp"
#include "egta/game_file.hpp"
#include "egta/generators.hpp"
#include "egta/nfg.hpp"
#include "egta/oracle.hpp"
#include "egta/parallel.hpp"
#include "egta/poker.hpp"
#include "egta/properties.hpp"
#include "egta/rng.hpp"
#include "egta/sampling.hpp"

#endif  // EGTA_EGTA_HPP_
