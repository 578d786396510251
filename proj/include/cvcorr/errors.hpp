// Copyright 2026 The cvcorr Authors
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

#ifndef CVCORR_ERRORS_HPP
#define CVCORR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvcorr {

enum class ErrorCode {
    NonFinite,
    Unphysical,
    DomainError,
    DimensionMismatch,
    BadIndex,
    SingularMeasurement,
    BadCoupling,
    NumericalError,
    NoSignChange,
    BadKnots,
    TooFewSamples,
    ModelFailure,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::Unphysical: return "Unphysical";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::SingularMeasurement: return "SingularMeasurement";
        case ErrorCode::BadCoupling: return "BadCoupling";
        case ErrorCode::NumericalError: return "NumericalError";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::BadKnots: return "BadKnots";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::ModelFailure: return "ModelFailure";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace cvcorr

#endif  // CVCORR_ERRORS_HPP
