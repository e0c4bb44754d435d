#pragma once

#include <stdexcept>
#include <string>

namespace artifact {

// Thrown when an input exceeds a documented enumeration or storage cap.
class cap_exceeded : public std::runtime_error {
public:
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative solver hits its iteration cap without meeting its tolerance.
class non_convergence : public std::runtime_error {
public:
    explicit non_convergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace artifact
