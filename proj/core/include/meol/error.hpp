// Copyright 2026 The meol Authors
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

#include <stdexcept>
#include <string>

namespace meol {

/// Base class for every error raised by the library. `kind()` is the stable
/// machine-readable name (e.g. "DuplicateId") used in audit logs and CLI
/// JSON summaries.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message);

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define MEOL_DECLARE_ERROR(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

// svg
MEOL_DECLARE_ERROR(MalformedXml);
MEOL_DECLARE_ERROR(NotAnSvg);
MEOL_DECLARE_ERROR(DuplicateId);
MEOL_DECLARE_ERROR(RenderUnsupported);
MEOL_DECLARE_ERROR(DimensionMismatch);
MEOL_DECLARE_ERROR(ImageCodecError);

// rewrite
MEOL_DECLARE_ERROR(SvgTooLong);
MEOL_DECLARE_ERROR(PlanParseError);
MEOL_DECLARE_ERROR(SelectorUnresolved);
MEOL_DECLARE_ERROR(IdCollision);
MEOL_DECLARE_ERROR(VisualCheckFailed);
MEOL_DECLARE_ERROR(LabelCheckFailed);

// embed / backend
MEOL_DECLARE_ERROR(ModalityMismatch);
MEOL_DECLARE_ERROR(BackendUnavailable);
MEOL_DECLARE_ERROR(BackendRejected);
MEOL_DECLARE_ERROR(NonFiniteVector);
MEOL_DECLARE_ERROR(ZeroVector);
MEOL_DECLARE_ERROR(ProtocolError);
MEOL_DECLARE_ERROR(TemplateError);

// retrieval
MEOL_DECLARE_ERROR(DimMismatch);
MEOL_DECLARE_ERROR(DuplicateItem);
MEOL_DECLARE_ERROR(UnknownGroundTruth);
MEOL_DECLARE_ERROR(TooFewItems);
MEOL_DECLARE_ERROR(IndexFormatError);

// bench
MEOL_DECLARE_ERROR(FileUnreadable);
MEOL_DECLARE_ERROR(EmptyDataset);
MEOL_DECLARE_ERROR(ConfigError);

#undef MEOL_DECLARE_ERROR

}  // namespace meol
