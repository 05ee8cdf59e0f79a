//
// Copyright 2026 The dialrobust Authors.
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
//

#ifndef DIALROBUST_ERRORS_H_
#define DIALROBUST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dialrobust {

// Every failure raised by the library derives from Error. The four direct
// subclasses map onto the CLI's distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class BackendError : public Error {
 public:
  using Error::Error;
};

class StatsError : public Error {
 public:
  using Error::Error;
};

// A transform produced an empty response (e.g. stripping punctuation from
// "?!").
class DegenerateOutputError : public DataError {
 public:
  using DataError::DataError;
};

// The attack does not apply to this conversation (fact repetition on an
// ungrounded dialogue).
class NotApplicableError : public DataError {
 public:
  using DataError::DataError;
};

class ProtocolError : public BackendError {
 public:
  using BackendError::BackendError;
};

class CapabilityError : public BackendError {
 public:
  using BackendError::BackendError;
};

class UnparseableOutputError : public BackendError {
 public:
  using BackendError::BackendError;
};

class UndefinedCorrelationError : public StatsError {
 public:
  using StatsError::StatsError;
};

}  // namespace dialrobust

#endif  // DIALROBUST_ERRORS_H_
