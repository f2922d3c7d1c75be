#pragma once

#include <stdexcept>
#include <string>

namespace coneq {

// Library-wide error taxonomy. The CLI maps BadInput/BadConfig to exit
// code 2 and the numerical kinds to exit code 3.
class Error : public std::runtime_error {
public:
    enum class Kind {
        InvalidDirection,      // w = 0 or w outside the dual cone
        DegenerateCone,        // C = R^d, so the dual cone is {0}
        UnsupportedDimension,  // automatic dual-cone computation needs d <= 3
        BadInput,              // malformed file / value out of domain
        BadConfig,             // inconsistent run configuration
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

[[noreturn]] inline void throw_invalid_direction(const std::string& what) {
    throw Error(Error::Kind::InvalidDirection, what);
}
[[noreturn]] inline void throw_degenerate_cone(const std::string& what) {
    throw Error(Error::Kind::DegenerateCone, what);
}
[[noreturn]] inline void throw_unsupported_dimension(const std::string& what) {
    throw Error(Error::Kind::UnsupportedDimension, what);
}
[[noreturn]] inline void throw_bad_input(const std::string& what) {
    throw Error(Error::Kind::BadInput, what);
}
[[noreturn]] inline void throw_bad_config(const std::string& what) {
    throw Error(Error::Kind::BadConfig, what);
}

}  // namespace coneq
