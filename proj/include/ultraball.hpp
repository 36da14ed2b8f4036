// Copyright 2026 The Ultraball Authors
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

#include "ultraball/error.hpp"
#include "ultraball/rational.hpp"
#include "ultraball/point_set.hpp"
#include "ultraball/space.hpp"
#include "ultraball/ballean.hpp"
#include "ultraball/dendrogram.hpp"
#include "ultraball/random.hpp"
#include "ultraball/dlps.hpp"
#include "ultraball/io.hpp"
#include "ultraball/harness.hpp"
