// Copyright 2026 The Authors.
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

#include "factorsum/config.hpp"
#include "factorsum/corpus.hpp"
#include "factorsum/evaluator.hpp"
#include "factorsum/io.hpp"
#include "factorsum/metrics.hpp"
#include "factorsum/optimizer.hpp"
#include "factorsum/pipeline.hpp"
#include "factorsum/sampler.hpp"
#include "factorsum/synthetic.hpp"
#include "factorsum/text.hpp"
#include "factorsum/viewgen.hpp"
