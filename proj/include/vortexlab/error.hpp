// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_ERROR_HPP
#define VORTEXLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vortexlab
{

// Violated precondition on user-supplied input (bad grid size, zero too close to the
// boundary, mismatched grids, ...). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// An iterative method failed to reach its tolerance. Carries the last residual.
class ConvergenceError : public std::runtime_error
{
public:
  ConvergenceError(const std::string &what, double last_residual, int iterations)
    : std::runtime_error(what), last_residual_(last_residual), iterations_(iterations)
  {
  }

  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double last_residual_;
  int iterations_;
};

// A computed object contradicts a structural guarantee (e.g. more sublevel components
// than vortices). Indicates an upstream numerical failure, not bad input.
class InternalError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

}  // namespace vortexlab

#endif  // VORTEXLAB_ERROR_HPP
