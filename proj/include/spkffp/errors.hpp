// include/spkffp/errors.hpp

// Copyright 2026  The spkffp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPKFFP_ERRORS_HPP_
#define SPKFFP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace spkffp {

// Bad input: malformed files, schema violations, inconsistent dimensions.
// The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query whose feature vector is all zeros. Counted separately by eval
// instead of being assigned the tie-break class.
class FeaturelessSampleError : public DataError {
 public:
  explicit FeaturelessSampleError(const std::string &sample_id)
      : DataError("featureless sample: " + sample_id), sample_id_(sample_id) {}
  const std::string &sample_id() const { return sample_id_; }

 private:
  std::string sample_id_;
};

// Something that should be impossible given validated inputs. Exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid command-line or configuration usage. Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spkffp

#endif  // SPKFFP_ERRORS_HPP_
