// SPDX-License-Identifier: Apache-2.0
//
// beamcb: data-driven analog beam codebook synthesis for antenna arrays
// Copyright (C) 2026 The beamcb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace beamcb::cli {

/// Empty string when path conforms to the schema implied by its file name,
/// otherwise the first violation. Unknown files are skipped (returns "skip").
std::string check_file(const std::filesystem::path& path);

/// Validates every given file or directory (recursively). With no paths,
/// runs gen-efield, design, eval and compare in a scratch directory and
/// validates the results. Returns 0 when everything conforms.
int selfcheck(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err);

} // namespace beamcb::cli
