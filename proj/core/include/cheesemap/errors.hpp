#pragma once

#include <stdexcept>
#include <string>

namespace cheesemap {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmptyCloudError : public Error {
public:
  EmptyCloudError() : Error("point cloud is empty") {}
  using Error::Error;
};

class CapacityError : public Error {
public:
  using Error::Error;
};

class OutOfDomainError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace cheesemap
