// Copyright 2026 The shufflesum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shufflesum/real.hpp"

#include <cmath>
#include <vector>

namespace shufflesum {

std::string Real::str() const {
  // ~0.3010 decimal digits per mantissa bit, plus guard digits.
  const int digits = static_cast<int>(std::ceil(prec() * 0.30103)) + 2;
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace shufflesum
