// Copyright 2026 The idp authors
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

/** @file idp.hpp
 * Umbrella header: hyperbolic uniformization of glued triangle complexes by
 * ideal-prism volume maximization, circle-pattern feasibility and
 * realization, and Poincare-disk development.
 */

#include "idp/angles.hpp"
#include "idp/complex.hpp"
#include "idp/develop.hpp"
#include "idp/errors.hpp"
#include "idp/hypvol.hpp"
#include "idp/json_io.hpp"
#include "idp/maxflow.hpp"
#include "idp/patterns.hpp"
#include "idp/svg.hpp"
#include "idp/uniformize.hpp"
