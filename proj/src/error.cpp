/*
 * Copyright 2026 The fecam-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "fecam/error.hpp"

namespace fecam {

std::string_view category_name(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::InvalidPulse: return "invalid-pulse";
        case ErrorCategory::OutOfRange: return "out-of-range";
        case ErrorCategory::EmptyWindow: return "empty-window";
        case ErrorCategory::InvalidParameter: return "invalid-parameter";
        case ErrorCategory::DisturbViolation: return "disturb-violation";
        case ErrorCategory::Parse: return "parse";
        case ErrorCategory::DimensionMismatch: return "dimension-mismatch";
        case ErrorCategory::InconsistentInput: return "inconsistent-input";
        case ErrorCategory::Io: return "io";
    }
    return "unknown";
}

}  // namespace fecam
