#include "hybridad/errors.hpp"

namespace hybridad {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::NonMonotonicTime: return "NonMonotonicTime";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::NonBinaryDiscrete: return "NonBinaryDiscrete";
    case Errc::TooShort: return "TooShort";
    case Errc::IrregularSampling: return "IrregularSampling";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::EmptyData: return "EmptyData";
    case Errc::TooLarge: return "TooLarge";
    case Errc::EmptyObservation: return "EmptyObservation";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NondeterminismConflict: return "NondeterminismConflict";
    case Errc::SignatureLengthMismatch: return "SignatureLengthMismatch";
    case Errc::KindsMismatch: return "KindsMismatch";
    case Errc::NoContinuousSignals: return "NoContinuousSignals";
    case Errc::SpanTooLong: return "SpanTooLong";
    case Errc::ParseError: return "ParseError";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace hybridad
