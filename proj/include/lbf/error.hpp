// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lbf {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (bad sizes, negative bounds...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input does not carry the expected signature/magic at all.
class WrongFormat : public Error {
 public:
  using Error::Error;
};

// Input carries the right signature but its payload is damaged or truncated.
class CorruptInput : public Error {
 public:
  using Error::Error;
};

// Recognized container, but a version this build does not handle.
class UnsupportedVersion : public Error {
 public:
  using Error::Error;
};

// Recognized signature, but a variant (e.g. colorspace) outside our support.
class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

}  // namespace lbf
