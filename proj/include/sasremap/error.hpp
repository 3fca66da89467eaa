#pragma once

#include <stdexcept>
#include <string>

namespace sasremap {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// The new mesh moved a cell beyond the node neighborhood of its old
/// counterpart, so the local overlay no longer covers it.
class LocalityError : public Error {
 public:
  LocalityError(const std::string& what, int cell_i, int cell_j, double defect, int step = -1)
      : Error(what), cell_i_(cell_i), cell_j_(cell_j), defect_(defect), step_(step) {}

  int cell_i() const { return cell_i_; }
  int cell_j() const { return cell_j_; }
  double defect() const { return defect_; }
  int step() const { return step_; }

 private:
  int cell_i_;
  int cell_j_;
  double defect_;
  int step_;
};

}  // namespace sasremap
