// Copyright 2026 The clinorm Authors.
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

#ifndef CLINORM_ERRORS_H_
#define CLINORM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace clinorm {

enum class ErrorCode {
  kIo,
  kParse,
  kInvalidArgument,
  kEmptyInput,
  kCycle,
  kNotLoaded,
  kFormat,
};

const char *ErrorCodeName(ErrorCode code);

// Fatal conditions raised by the library. Recoverable per-line problems
// (malformed release rows, unknown concept ids in references) are counted in
// reports instead of thrown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clinorm

#endif  // CLINORM_ERRORS_H_
