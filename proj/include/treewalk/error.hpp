#pragma once

#include <stdexcept>

namespace treewalk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumerationCapError : Error {
  using Error::Error;
};

}  // namespace treewalk
