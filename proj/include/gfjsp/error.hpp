#ifndef GFJSP_ERROR_HPP
#define GFJSP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gfjsp {

// Error kinds mirror the status codes of the C API (greenfjsp.h).
enum class ErrorKind {
    Parse,       // malformed instance or market file
    Param,       // invalid argument value
    Limit,       // combinatorial guard refused the request
    Validation,  // schedule violates its invariants
    Horizon,     // operation would overrun the time horizon
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Error parse_error(std::string msg) { return Error(ErrorKind::Parse, std::move(msg)); }
inline Error param_error(std::string msg) { return Error(ErrorKind::Param, std::move(msg)); }
inline Error limit_error(std::string msg) { return Error(ErrorKind::Limit, std::move(msg)); }
inline Error validation_error(std::string msg) { return Error(ErrorKind::Validation, std::move(msg)); }
inline Error horizon_error(std::string msg) { return Error(ErrorKind::Horizon, std::move(msg)); }

} // namespace gfjsp

#endif
