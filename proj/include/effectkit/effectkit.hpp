// Copyright 2026 The effectkit Authors
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

#include "effectkit/effect.hpp"
#include "effectkit/error.hpp"
#include "effectkit/json_io.hpp"
#include "effectkit/nogo.hpp"
#include "effectkit/operator.hpp"
#include "effectkit/random.hpp"
#include "effectkit/valuation.hpp"
