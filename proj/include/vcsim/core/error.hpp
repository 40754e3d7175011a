#pragma once

#include <stdexcept>
#include <string>

namespace vcsim {

// Exception carrying a module-specific error code. Each module instantiates
// this with its own enum so callers can branch on code() without parsing text.
template <typename Code>
class Error : public std::runtime_error {
public:
    Error(Code code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Code code() const noexcept { return code_; }

private:
    Code code_;
};

} // namespace vcsim
