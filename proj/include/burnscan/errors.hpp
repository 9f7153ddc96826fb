#pragma once

#include <stdexcept>
#include <string>

namespace burnscan {

/// Error codes shared across the toolkit. The CLI maps these onto process
/// exit codes: config errors -> 2, data errors -> 3, empty results -> 4.
enum class Errc {
    // raster-core
    CrsMismatch,
    MethodKindMismatch,
    AlignmentMismatch,
    EmptyIntersection,
    // scene-catalog
    ParseError,
    InvalidMeta,
    NoSuitableProduct,
    MissingBand,
    UnsupportedTiff,
    IoError,
    // preprocess
    EmptyStack,
    NoScenesInWindow,
    // severity / reference
    UnknownUnits,
    InvalidCoordinate,
    CrossYearWindow,
    // assessment
    EmptyMatrix,
    // synthkit / cli
    InvalidSpec,
    ConfigError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace burnscan
