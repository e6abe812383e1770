#pragma once

// Surface definitions in a small INI dialect:
//
//   name = two-ended
//   genus = 0
//   ends = 2
//   core = analytic:0        ; or polar-cap
//   chi = 0                  ; optional, checked against genus and ends
//   hypothesis_hint = 3.5    ; optional
//
//   [end.1]
//   g = "exp(t^2)"
//   t_min = 0
//
//   [end.2]
//   g = "1"
//
// Expressions use the metric DSL. Section numbers give the end order.

#include <cvlab/surface_model.hpp>

#include <filesystem>
#include <string>

namespace cvlab {

/// Throws ConfigError for structural problems and ParseError /
/// UnknownIdentifier for bad expressions.
SurfaceModel parse_surface_config(const std::string& text,
                                  const std::string& fallback_name = "config");

SurfaceModel load_surface_config(const std::filesystem::path& path);

}  // namespace cvlab
