// include/spkffp/diagnostics.hpp

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

#ifndef SPKFFP_DIAGNOSTICS_HPP_
#define SPKFFP_DIAGNOSTICS_HPP_

#include <functional>
#include <string_view>

namespace spkffp {

using WarningSink = std::function<void(std::string_view)>;

// Routes a non-fatal warning to the installed sink (stderr by default).
void warn(std::string_view message);

// Installs a new sink and returns the previous one. Passing an empty
// function restores the stderr sink.
WarningSink set_warning_sink(WarningSink sink);

}  // namespace spkffp

#endif  // SPKFFP_DIAGNOSTICS_HPP_
