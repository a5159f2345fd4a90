#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gesturebench {

enum class ErrorCode {
    FileNotFound,
    MalformedHeader,
    ZeroArea,
    IoFailure,
    ParseFailure,
    DuplicateId,
    DegenerateWrist,
    InvalidWrist,
    EmptyAfterWristCut,
    EmptyMask,
    TooSmall,
    TooFewPoints,
    EmptyField,
    DegeneratePoints,
    NoGradient,
    BinCountMismatch,
    NonSquare,
    NonFiniteEntry,
    PointCountMismatch,
    OutOfRangeInput,
    WidthMismatch,
    EmptySet,
    MissingFeature,
    UnknownLabel,
    InvalidGallery,
    InsufficientImages,
    InsufficientData,
    InvalidConfig,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by descriptor bundling; names the feature whose computation failed.
class FeatureError : public Error {
public:
    FeatureError(std::string feature, const Error& cause)
        : Error(cause.code(), feature + ": " + cause.what()), feature_(std::move(feature)) {}

    const std::string& feature() const noexcept { return feature_; }

private:
    std::string feature_;
};

} // namespace gesturebench
