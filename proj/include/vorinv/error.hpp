// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vorinv {

enum class ErrorKind {
  // geom
  DegenerateSegment,
  CollinearPoints,
  DegenerateAngle,
  // tess
  FormatError,
  AsymmetricAdjacency,
  DummyMisplaced,
  NonPlanarEmbedding,
  IsolatedVertex,
  // forward
  DuplicateGenerators,
  GeneratorOutsideBounds,
  NotInteriorVertex,
  // invert
  DegenerateVertex,
  SectorAngleOverflow,
  InsufficientVertices,
  AllRaysParallel,
  NoUsableIntersections,
  RankDeficient,
  TooFewEdges,
  NonConvexPolygon,
  // harness
  DuplicateEstimates,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateSegment: return "DegenerateSegment";
    case ErrorKind::CollinearPoints: return "CollinearPoints";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::AsymmetricAdjacency: return "AsymmetricAdjacency";
    case ErrorKind::DummyMisplaced: return "DummyMisplaced";
    case ErrorKind::NonPlanarEmbedding: return "NonPlanarEmbedding";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::DuplicateGenerators: return "DuplicateGenerators";
    case ErrorKind::GeneratorOutsideBounds: return "GeneratorOutsideBounds";
    case ErrorKind::NotInteriorVertex: return "NotInteriorVertex";
    case ErrorKind::DegenerateVertex: return "DegenerateVertex";
    case ErrorKind::SectorAngleOverflow: return "SectorAngleOverflow";
    case ErrorKind::InsufficientVertices: return "InsufficientVertices";
    case ErrorKind::AllRaysParallel: return "AllRaysParallel";
    case ErrorKind::NoUsableIntersections: return "NoUsableIntersections";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::TooFewEdges: return "TooFewEdges";
    case ErrorKind::NonConvexPolygon: return "NonConvexPolygon";
    case ErrorKind::DuplicateEstimates: return "DuplicateEstimates";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

//! Exception carrying a machine-readable kind and, where it applies, the
//! index of the offending element (vertex, polygon, line number...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace vorinv
