#pragma once

#include <string>

#include "imgql/grid.hpp"

namespace imgql {

enum class IntensityMode { Rec601, Mean };
enum class Channel { Red, Green, Blue };

// Reads an 8-bit PNG (gray, gray+alpha, palette, RGB or RGBA) into an RGB
// image; grayscale replicates the channel, alpha is discarded. 16-bit
// files and undecodable data are rejected with the path in the message.
ColorImage load_png(const std::string& path);

// Writes an 8-bit grayscale PNG, creating parent directories as needed.
// Boolean masks map true->255, false->0.
void save_png(const std::string& path, const BoolImage& img);

// Scalar images are min-max rescaled to 0..255 (rounding half away from
// zero); an all-equal image saves as all 0, +infinity saturates to 255.
void save_png(const std::string& path, const ScalarImage& img);

// Per-voxel luminance. Rec601 uses 0.299 R + 0.587 G + 0.114 B (values
// stay real, in 8-bit units); Mean averages the three channels.
ScalarImage intensity(const ColorImage& c, IntensityMode mode = IntensityMode::Rec601);

ScalarImage color_proj(const ColorImage& c, Channel ch);

double min_value(const ScalarImage& a);
double max_value(const ScalarImage& a);

// Pointwise image arithmetic; division by zero yields signed infinity,
// 0/0 is an error (scalar images never hold NaN).
enum class ArithOp { Add, Sub, Mul, Div };
ScalarImage voxel_arith(ArithOp op, const ScalarImage& lhs, const ScalarImage& rhs);
ScalarImage voxel_arith(ArithOp op, const ScalarImage& lhs, double rhs);

// Pointwise strict comparisons producing a boolean image.
enum class CmpOp { Gt, Lt };
BoolImage voxel_compare(CmpOp op, const ScalarImage& lhs, const ScalarImage& rhs);
BoolImage voxel_compare(CmpOp op, const ScalarImage& lhs, double rhs);

// Scalar (Number) arithmetic with the same division rules.
double num_arith(ArithOp op, double x, double y);
bool num_compare(CmpOp op, double x, double y);

// Boolean conditional on whole images: both branches are values.
BoolImage if_bool(bool cond, const BoolImage& t, const BoolImage& f);

}  // namespace imgql
