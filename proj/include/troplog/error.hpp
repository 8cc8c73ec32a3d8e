#pragma once

#include <stdexcept>
#include <string>

namespace troplog {

// Every failure raised by the library. The message is the stable,
// user-facing text (e.g. "empty chamber", "not genus one").
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace troplog
