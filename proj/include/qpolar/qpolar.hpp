// Copyright 2026 The qpolar Authors
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

#include "qpolar/channel.hpp"
#include "qpolar/clifford.hpp"
#include "qpolar/codec.hpp"
#include "qpolar/errors.hpp"
#include "qpolar/io.hpp"
#include "qpolar/parallel.hpp"
#include "qpolar/pauli.hpp"
#include "qpolar/polarization.hpp"
#include "qpolar/quantum.hpp"
#include "qpolar/random.hpp"
#include "qpolar/verify.hpp"
