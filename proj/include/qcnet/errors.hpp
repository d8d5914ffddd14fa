#pragma once

#include <stdexcept>
#include <string>

namespace qcnet {

/// All library failures are reported as Error with a module-qualified code,
/// e.g. "netgraph/invalid-parameter", so callers can match on code() without
/// parsing the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string code, const std::string& message)
        : std::runtime_error(module + "/" + code + ": " + message),
          module_(std::move(module)),
          code_(std::move(code)) {}

    const std::string& module_name() const noexcept { return module_; }
    const std::string& code() const noexcept { return code_; }
    std::string qualified_code() const { return module_ + "/" + code_; }

private:
    std::string module_;
    std::string code_;
};

[[noreturn]] inline void raise(const std::string& module, const std::string& code,
                               const std::string& message) {
    throw Error(module, code, message);
}

inline void require(bool cond, const std::string& module, const std::string& code,
                    const std::string& message) {
    if (!cond) raise(module, code, message);
}

}  // namespace qcnet
