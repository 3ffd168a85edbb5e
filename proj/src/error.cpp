// Copyright 2026 The atomcompact Authors
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

#include "atomcompact/error.hpp"

namespace atomcompact {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::TheoryMismatch: return "TheoryMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::AmbientMissing: return "AmbientMissing";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::NotTotal: return "NotTotal";
    case ErrorCode::NotASubset: return "NotASubset";
    case ErrorCode::NotASubsetOfCompactification: return "NotASubsetOfCompactification";
    case ErrorCode::UnsupportedTheory: return "UnsupportedTheory";
    case ErrorCode::NonzeroResidual: return "NonzeroResidual";
    case ErrorCode::SystemInsolvable: return "SystemInsolvable";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::KernelNotDefinable: return "KernelNotDefinable";
    case ErrorCode::LetterNotInAlphabet: return "LetterNotInAlphabet";
    case ErrorCode::DecompositionOutsideHomBasis: return "DecompositionOutsideHomBasis";
    case ErrorCode::PoolTooSmall: return "PoolTooSmall";
  }
  return "Unknown";
}

}  // namespace atomcompact
