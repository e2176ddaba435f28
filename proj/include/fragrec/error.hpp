// Copyright 2026 The fragrec Authors.
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

#ifndef FRAGREC_ERROR_HPP_
#define FRAGREC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fragrec {

// Fatal problem with user-supplied input (corpus, catalog, config, index).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Annotation keys do not line up with the index segmentation.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fragrec

#endif  // FRAGREC_ERROR_HPP_
