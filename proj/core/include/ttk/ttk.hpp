// Copyright 2026 The ttk Authors.
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

#include "ttk/errors.hpp"
#include "ttk/linalg.hpp"
#include "ttk/precond.hpp"
#include "ttk/problems.hpp"
#include "ttk/random.hpp"
#include "ttk/serialize.hpp"
#include "ttk/sketch.hpp"
#include "ttk/solvers.hpp"
#include "ttk/stta.hpp"
#include "ttk/tt_operator.hpp"
#include "ttk/tt_vector.hpp"
