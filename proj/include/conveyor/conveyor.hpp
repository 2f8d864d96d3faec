// Copyright 2026 The Conveyor Authors
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

#include "conveyor/circuit.hpp"
#include "conveyor/compiler.hpp"
#include "conveyor/error.hpp"
#include "conveyor/hamiltonian.hpp"
#include "conveyor/oracle.hpp"
#include "conveyor/pulses.hpp"
#include "conveyor/state.hpp"
#include "conveyor/topology.hpp"
#include "conveyor/verify.hpp"
