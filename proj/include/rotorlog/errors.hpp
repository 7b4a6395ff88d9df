#pragma once

#include <stdexcept>
#include <string>

namespace rotorlog {

// Base for every error the library raises on a precondition violation.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_modulus : public error {
public:
    using error::error;
};

class invalid_instance : public error {
public:
    using error::error;
};

class invalid_mode : public error {
public:
    using error::error;
};

class mode_mismatch : public error {
public:
    using error::error;
};

class modulus_mismatch : public error {
public:
    using error::error;
};

class not_a_unit : public error {
public:
    using error::error;
};

class insufficient_data : public error {
public:
    using error::error;
};

class invalid_config : public error {
public:
    using error::error;
};

class io_error : public error {
public:
    io_error(const std::string& path, const std::string& what)
        : error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace rotorlog
