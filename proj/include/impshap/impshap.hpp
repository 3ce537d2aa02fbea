/*
 * Copyright 2026 The impshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header.
#ifndef IMPSHAP_IMPSHAP_HPP_
#define IMPSHAP_IMPSHAP_HPP_

#include "impshap/core.hpp"
#include "impshap/correlation.hpp"
#include "impshap/data.hpp"
#include "impshap/dataset.hpp"
#include "impshap/forest.hpp"
#include "impshap/impurity.hpp"
#include "impshap/info_theory.hpp"
#include "impshap/population.hpp"
#include "impshap/relevance.hpp"
#include "impshap/tree.hpp"
#include "impshap/tu_game.hpp"
#include "impshap/verify.hpp"

#endif  // IMPSHAP_IMPSHAP_HPP_
