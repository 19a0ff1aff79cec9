// Copyright 2026 The pirlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIRLAB_PIRLAB_HPP
#define PIRLAB_PIRLAB_HPP

#include "pirlab/collusion.hpp"
#include "pirlab/errors.hpp"
#include "pirlab/field.hpp"
#include "pirlab/linear_code.hpp"
#include "pirlab/matrix.hpp"
#include "pirlab/rational.hpp"
#include "pirlab/scheme.hpp"
#include "pirlab/simulator.hpp"
#include "pirlab/verifier.hpp"

#endif  // PIRLAB_PIRLAB_HPP
