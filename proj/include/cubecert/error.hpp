#pragma once

#include <stdexcept>
#include <string>

namespace cubecert {

// Three failure classes, mirroring the CLI exit codes:
//   input (bad files / arguments)            -> exit 2
//   precondition (operation misuse)          -> exit 3
//   verification (a checked claim is false)  -> exit 1
enum class ErrorKind { input, precondition, verification };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg)
        : Error(ErrorKind::precondition, msg) {}
};

// Thrown when a machine-checked claim fails: these are the errors that
// matter, since they falsify the construction rather than the call site.
struct VerificationError : Error {
    explicit VerificationError(const std::string& msg)
        : Error(ErrorKind::verification, msg) {}
};

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::verification: return 1;
        case ErrorKind::input: return 2;
        case ErrorKind::precondition: return 3;
    }
    return 1;
}

}  // namespace cubecert
