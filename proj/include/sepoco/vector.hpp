// Copyright (C) 2026 The sepoco Authors. All Rights reserved.
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

#include <Eigen/Dense>

namespace sepoco {

using Vector = Eigen::VectorXd;

inline bool all_finite(const Vector& v) { return v.allFinite(); }

// Throws DimensionMismatch when v.size() != expected, InvalidArgument on
// non-finite entries. `what` names the argument in the message.
void require_vector(const Vector& v, Eigen::Index expected, const char* what);

}  // namespace sepoco
