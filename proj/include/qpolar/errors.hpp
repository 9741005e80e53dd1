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

#include <stdexcept>
#include <string>

namespace qpolar {

/// A computation would exceed a configured size limit.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Successive cancellation reached an all-zero belief.
class decode_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical identity or bound did not hold within tolerance.
class verification_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpolar
