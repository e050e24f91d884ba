#pragma once

// Standalone SVG 1.1 renders of a run: limit points in an affine chart,
// the null quadric (closed silhouette curve when the form has one negative
// direction, a sampled point cloud for split signature (2,2)), and witness
// triangles when the verdict is Mixed. Charts with more than two affine
// dimensions are projected onto the top two principal axes of the sampled
// points.

#include <string>

#include "hpq/pipeline.hpp"

namespace hpq {

// Dimensions the renderer knows how to draw.
bool plot_supported(int p, int q);

// Writes the file and returns true when supported; returns false (writing
// nothing) otherwise. Throws NumericalError when the file cannot be written.
bool emit_plot(const PipelineResult& res, const std::string& path);

}  // namespace hpq
