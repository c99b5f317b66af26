#pragma once

#include <stdexcept>
#include <string>

namespace hybridad {

enum class Errc {
    // signals
    NonMonotonicTime,
    ArityMismatch,
    NonBinaryDiscrete,
    TooShort,
    IrregularSampling,
    // rbm / dbn
    DimensionMismatch,
    NonFinite,
    EmptyData,
    TooLarge,
    // automaton
    EmptyObservation,
    EmptyInput,
    NondeterminismConflict,
    SignatureLengthMismatch,
    // pipeline
    KindsMismatch,
    NoContinuousSignals,
    // datagen
    SpanTooLong,
    // io / cli
    ParseError,
    VersionMismatch,
    IoError,
    // misc precondition violations
    InvalidArgument,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace hybridad
