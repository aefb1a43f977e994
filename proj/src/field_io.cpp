// Copyright (c) 2026 The vortexlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "vortexlab/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <vector>
#include "vortexlab/error.hpp"

namespace vortexlab
{

namespace
{

constexpr std::array<char, 4> kMagic = {'A', 'H', 'F', '1'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 1 + 1;

template <typename T>
void put_le(std::vector<unsigned char> &buf, T value)
{
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
  {
    std::reverse(bytes.begin(), bytes.end());
  }
  buf.insert(buf.end(), bytes.begin(), bytes.end());
}

template <typename T>
T get_le(const unsigned char *p)
{
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
  {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

void write_blocks(const Grid &grid, FieldKind kind,
                  std::initializer_list<std::span<const double>> blocks,
                  const std::filesystem::path &path)
{
  for (auto b : blocks)
  {
    if (b.size() != grid.size())
    {
      throw InputError("field array length does not match its grid");
    }
    if (!all_finite(b))
    {
      throw FieldIoError(FieldIoError::Kind::NonFinite,
                         "refusing to write non-finite values to " + path.string());
    }
  }
  std::vector<unsigned char> buf;
  buf.reserve(kHeaderBytes + blocks.size() * grid.size() * 8);
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(grid.n()));
  put_le<double>(buf, grid.half_width());
  buf.push_back(static_cast<unsigned char>(kind));
  buf.push_back(0);
  for (auto b : blocks)
  {
    for (double v : b)
    {
      put_le<double>(buf, v);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw FieldIoError(FieldIoError::Kind::Io, "cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char *>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out)
  {
    throw FieldIoError(FieldIoError::Kind::Io, "write failed: " + path.string());
  }
}

int components(FieldKind kind)
{
  return (kind == FieldKind::OneForm || kind == FieldKind::Complex) ? 2 : 1;
}

}  // namespace

void write_field(const ScalarField &f, const std::filesystem::path &path)
{
  write_blocks(f.grid, FieldKind::Scalar, {f.values}, path);
}

void write_field(const OneForm &f, const std::filesystem::path &path)
{
  write_blocks(f.grid, FieldKind::OneForm, {f.a1, f.a2}, path);
}

void write_field(const TwoForm &f, const std::filesystem::path &path)
{
  write_blocks(f.grid, FieldKind::TwoForm, {f.density}, path);
}

void write_field(const ComplexField &f, const std::filesystem::path &path)
{
  write_blocks(f.grid, FieldKind::Complex, {f.re, f.im}, path);
}

AnyField read_field(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw FieldIoError(FieldIoError::Kind::Io, "cannot open " + path.string());
  }
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < 4 || std::memcmp(buf.data(), kMagic.data(), 4) != 0)
  {
    throw FieldIoError(FieldIoError::Kind::BadMagic, "bad magic in " + path.string());
  }
  if (buf.size() < kHeaderBytes)
  {
    throw FieldIoError(FieldIoError::Kind::Truncated, "truncated header in " + path.string());
  }
  const auto n = get_le<std::uint32_t>(buf.data() + 4);
  const auto half_width = get_le<double>(buf.data() + 8);
  const auto kind_byte = buf[16];
  if (kind_byte > 3 || buf[17] != 0)
  {
    throw FieldIoError(FieldIoError::Kind::BadHeader, "bad kind/reserved byte in " + path.string());
  }
  Grid grid;
  try
  {
    grid = build_grid(static_cast<int>(n), half_width);
  }
  catch (const InputError &e)
  {
    throw FieldIoError(FieldIoError::Kind::BadHeader,
                       "invalid grid in " + path.string() + ": " + e.what());
  }
  const auto kind = static_cast<FieldKind>(kind_byte);
  const std::size_t count = grid.size();
  const std::size_t expected = kHeaderBytes + components(kind) * count * 8;
  if (buf.size() < expected)
  {
    throw FieldIoError(FieldIoError::Kind::Truncated, "truncated payload in " + path.string());
  }
  if (buf.size() > expected)
  {
    throw FieldIoError(FieldIoError::Kind::TrailingData, "trailing bytes in " + path.string());
  }
  std::vector<double> data(components(kind) * count);
  for (std::size_t k = 0; k < data.size(); ++k)
  {
    data[k] = get_le<double>(buf.data() + kHeaderBytes + 8 * k);
  }
  if (!all_finite(data))
  {
    throw FieldIoError(FieldIoError::Kind::NonFinite, "non-finite values in " + path.string());
  }
  const auto block = [&](int b) {
    return std::vector<double>(data.begin() + b * count, data.begin() + (b + 1) * count);
  };
  switch (kind)
  {
    case FieldKind::Scalar:
    {
      ScalarField f(grid);
      f.values = block(0);
      return f;
    }
    case FieldKind::OneForm:
    {
      OneForm f(grid);
      f.a1 = block(0);
      f.a2 = block(1);
      return f;
    }
    case FieldKind::TwoForm:
    {
      TwoForm f(grid);
      f.density = block(0);
      return f;
    }
    case FieldKind::Complex:
    {
      ComplexField f(grid);
      f.re = block(0);
      f.im = block(1);
      return f;
    }
  }
  throw FieldIoError(FieldIoError::Kind::BadHeader, "unreachable field kind");
}

namespace
{

template <typename T>
T read_as(const std::filesystem::path &path, const char *name)
{
  auto any = read_field(path);
  if (auto *f = std::get_if<T>(&any))
  {
    return std::move(*f);
  }
  throw FieldIoError(FieldIoError::Kind::KindMismatch,
                     path.string() + " does not hold a " + name);
}

}  // namespace

ScalarField read_scalar_field(const std::filesystem::path &path)
{
  return read_as<ScalarField>(path, "scalar field");
}

OneForm read_one_form(const std::filesystem::path &path)
{
  return read_as<OneForm>(path, "one-form");
}

TwoForm read_two_form(const std::filesystem::path &path)
{
  return read_as<TwoForm>(path, "two-form");
}

ComplexField read_complex_field(const std::filesystem::path &path)
{
  return read_as<ComplexField>(path, "complex field");
}

}  // namespace vortexlab
