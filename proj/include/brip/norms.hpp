// Copyright 2026 The brip Authors.
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

#ifndef BRIP_NORMS_HPP
#define BRIP_NORMS_HPP

namespace brip {

/// The four matrix functionals the moment bounds are stated in.
struct MatrixNorms {
  double l1 = 0.0;     // entrywise sum of |B_ij|
  double s2 = 0.0;     // Schatten-2 (Frobenius)
  double op = 0.0;     // operator norm (max |eigenvalue| for symmetric B)
  double trace = 0.0;
};

}  // namespace brip

#endif  // BRIP_NORMS_HPP
