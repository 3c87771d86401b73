#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fsq/digit_set.hpp"

namespace fsq {

using Rgb = std::array<std::uint8_t, 3>;

struct Palette {
    Rgb background{255, 255, 255};
    Rgb attractor{40, 40, 40};
    Rgb tree{220, 60, 30};
    Rgb grid{160, 160, 160};
    Rgb face{30, 110, 220};
};

// 8-bit RGB raster, row 0 at the top.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;

    Image(int w, int h, Rgb fill);
    Rgb at(int x, int y) const;
    void set(int x, int y, Rgb c);
};

// Cells of D^k filled as squares of a px-by-px raster, y axis upward.
Image render_attractor(const DigitSet& d, int k, int px, const Palette& palette = {});

// The attractor underlay with the level-k main-tree cells painted over.
// Throws NotDendrite when K is not a dendrite.
Image render_tree_overlay(const DigitSet& d, int k, int px, const Palette& palette = {});

// n x n grid with the digits shaded and the face digits D_alpha of the four
// sides marked along the matching cell edge. SVG 1.1.
std::string render_diagram(const DigitSet& d, const Palette& palette = {});

std::vector<std::uint8_t> encode_png(const Image& image);
void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);
void write_text(const std::string& path, const std::string& text);

}  // namespace fsq
