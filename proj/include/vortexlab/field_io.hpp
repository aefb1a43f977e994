// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VORTEXLAB_FIELD_IO_HPP
#define VORTEXLAB_FIELD_IO_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <variant>
#include "vortexlab/grid.hpp"

namespace vortexlab
{

//
// "AHF1" field files. Layout (little-endian):
//
//   bytes 0-3   ASCII "AHF1"
//   u32         n
//   f64         L
//   u8          kind (0 scalar, 1 one-form, 2 two-form, 3 complex)
//   u8          reserved = 0
//   payload     n^2 * components f64, row-major iy*n+ix; multi-component fields are
//               stored block by block (a1 then a2, re then im).
//

enum class FieldKind : std::uint8_t
{
  Scalar = 0,
  OneForm = 1,
  TwoForm = 2,
  Complex = 3,
};

class FieldIoError : public std::runtime_error
{
public:
  enum class Kind
  {
    Io,
    BadMagic,
    BadHeader,
    Truncated,
    TrailingData,
    NonFinite,
    KindMismatch,
  };

  FieldIoError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

using AnyField = std::variant<ScalarField, OneForm, TwoForm, ComplexField>;

void write_field(const ScalarField &f, const std::filesystem::path &path);
void write_field(const OneForm &f, const std::filesystem::path &path);
void write_field(const TwoForm &f, const std::filesystem::path &path);
void write_field(const ComplexField &f, const std::filesystem::path &path);

AnyField read_field(const std::filesystem::path &path);

// Typed readers; throw FieldIoError(KindMismatch) if the file holds another kind.
ScalarField read_scalar_field(const std::filesystem::path &path);
OneForm read_one_form(const std::filesystem::path &path);
TwoForm read_two_form(const std::filesystem::path &path);
ComplexField read_complex_field(const std::filesystem::path &path);

}  // namespace vortexlab

#endif  // VORTEXLAB_FIELD_IO_HPP
