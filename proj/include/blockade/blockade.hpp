// Copyright 2026 The Blockade Chain Authors
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

#pragma once

#include "blockade/chain.hpp"
#include "blockade/deviation.hpp"
#include "blockade/encoded_gates.hpp"
#include "blockade/error.hpp"
#include "blockade/josephson.hpp"
#include "blockade/layout.hpp"
#include "blockade/linalg.hpp"
#include "blockade/pauli.hpp"
#include "blockade/pulses.hpp"
#include "blockade/schedule_io.hpp"
