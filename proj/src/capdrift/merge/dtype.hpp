#pragma once

#include <cstdint>

namespace capdrift {

// Bit-level converters. All narrowing uses round-to-nearest-even; NaNs stay
// NaN (quiet bit forced), infinities and signed zeros survive both ways.
float f16_to_f32(uint16_t h);
uint16_t f32_to_f16(float f);
float bf16_to_f32(uint16_t b);
uint16_t f32_to_bf16(float f);

}  // namespace capdrift
