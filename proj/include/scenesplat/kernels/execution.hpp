// Copyright 2026 The scenesplat Authors
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

#ifndef SCENESPLAT__KERNELS__EXECUTION_HPP_
#define SCENESPLAT__KERNELS__EXECUTION_HPP_

namespace scenesplat
{

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bitwise-identical results; the serial path exists for testing.
enum class Execution { Serial, Parallel };

/// Number of threads an OpenMP region would use (1 without OpenMP).
int max_threads();

}  // namespace scenesplat

#endif  // SCENESPLAT__KERNELS__EXECUTION_HPP_
