#include "fsq/render.hpp"

#include <fstream>
#include <sstream>

#include <png.h>

#include "fsq/errors.hpp"
#include "fsq/graphs.hpp"
#include "fsq/maintree.hpp"

namespace fsq {

Image::Image(int w, int h, Rgb fill) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = fill[0];
        rgb[i + 1] = fill[1];
        rgb[i + 2] = fill[2];
    }
}

Rgb Image::at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    rgb[i] = c[0];
    rgb[i + 1] = c[1];
    rgb[i + 2] = c[2];
}

namespace {

std::int64_t power(int n, int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) {
        p *= n;
    }
    return p;
}

// Pixel span [lo, hi) of grid line interval [c, c+1] over `cells` cells; never empty.
std::pair<int, int> span(std::int64_t c, std::int64_t cells, int px) {
    int lo = static_cast<int>(c * px / cells);
    int hi = static_cast<int>(((c + 1) * px + cells - 1) / cells);
    if (hi <= lo) {
        hi = lo + 1;
    }
    return {lo, std::min(hi, px)};
}

void paint_cell(Image& img, Cell c, std::int64_t cells, Rgb color) {
    auto [x0, x1] = span(c.x, cells, img.width);
    auto [y0, y1] = span(c.y, cells, img.height);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            img.set(x, img.height - 1 - y, color);
        }
    }
}

void check_size(int px) {
    if (px < 1 || px > 1 << 14) {
        throw Error(ErrorKind::OutOfRange, "image size must be between 1 and 16384 pixels");
    }
}

std::string hex(Rgb c) {
    static const char* digits = "0123456789abcdef";
    std::string s = "#";
    for (auto v : c) {
        s += digits[v >> 4];
        s += digits[v & 15];
    }
    return s;
}

}  // namespace

Image render_attractor(const DigitSet& d, int k, int px, const Palette& palette) {
    check_size(px);
    Image img(px, px, palette.background);
    const std::int64_t cells = power(d.n(), k);
    for (const Cell& c : refine(d, k)) {
        paint_cell(img, c, cells, palette.attractor);
    }
    return img;
}

Image render_tree_overlay(const DigitSet& d, int k, int px, const Palette& palette) {
    if (k < 1) {
        throw Error(ErrorKind::OutOfRange, "tree overlay needs level k >= 1");
    }
    Image img = render_attractor(d, k, px, palette);
    FaceTable table = face_table(d);
    auto realized = realized_offsets(d);
    if (!dendrite_check(d, table, realized).is_dendrite()) {
        throw Error(ErrorKind::NotDendrite, d.str() + " is not a dendrite");
    }
    auto boundary = boundary_points(table, active_faces(table, realized));
    BipartiteGraph g = level_graph(d, table, k);
    CombinatorialTree tree = steiner_subtree(g, locate_terminals(d, g, boundary));
    const std::int64_t cells = power(d.n(), k);
    for (std::size_t i = 0; i < g.whites.size(); ++i) {
        if (tree.present[i]) {
            paint_cell(img, g.whites[i], cells, palette.tree);
        }
    }
    return img;
}

std::string render_diagram(const DigitSet& d, const Palette& palette) {
    const int unit = 40;
    const int n = d.n();
    const int size = n * unit;
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size + 2 << "\" height=\"" << size + 2
      << "\" viewBox=\"-1 -1 " << size + 2 << ' ' << size + 2 << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"" << hex(palette.background)
      << "\"/>\n";
    auto top = [&](std::int64_t y) { return (n - 1 - y) * unit; };
    for (const Cell& c : d.digits()) {
        s << "<rect x=\"" << c.x * unit << "\" y=\"" << top(c.y) << "\" width=\"" << unit << "\" height=\"" << unit
          << "\" fill=\"" << hex(palette.attractor) << "\"/>\n";
    }
    for (int i = 0; i <= n; ++i) {
        s << "<line x1=\"" << i * unit << "\" y1=\"0\" x2=\"" << i * unit << "\" y2=\"" << size << "\" stroke=\""
          << hex(palette.grid) << "\" stroke-width=\"1\"/>\n";
        s << "<line x1=\"0\" y1=\"" << i * unit << "\" x2=\"" << size << "\" y2=\"" << i * unit << "\" stroke=\""
          << hex(palette.grid) << "\" stroke-width=\"1\"/>\n";
    }
    // face digits: a bar along the edge of the cell that lies on the side
    const int bar = unit / 6;
    for (FaceVector alpha : {FaceVector{1, 0}, FaceVector{-1, 0}, FaceVector{0, 1}, FaceVector{0, -1}}) {
        for (const Cell& c : face_digits(d, alpha)) {
            int x = static_cast<int>(c.x * unit);
            int y = static_cast<int>(top(c.y));
            int w = unit;
            int h = unit;
            if (alpha.a == 1) {
                x += unit - bar;
                w = bar;
            } else if (alpha.a == -1) {
                w = bar;
            } else if (alpha.b == 1) {
                h = bar;
            } else {
                y += unit - bar;
                h = bar;
            }
            s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h << "\" fill=\""
              << hex(palette.face) << "\" class=\"face\" data-face=\"" << alpha.str() << "\"/>\n";
        }
    }
    s << "</svg>\n";
    return s.str();
}

std::vector<std::uint8_t> encode_png(const Image& image) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw Error(ErrorKind::Io, "libpng initialisation failed");
    }
    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorKind::Io, "PNG encoding failed");
    }
    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t len) {
            auto* buf = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
            buf->insert(buf->end(), data, data + len);
        },
        nullptr);
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 9);
    png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
    png_write_info(png, info);
    const std::size_t stride = static_cast<std::size_t>(image.width) * 3;
    for (int y = 0; y < image.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(image.rgb.data() + y * stride));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) {
        throw Error(ErrorKind::Io, "cannot write " + path);
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw Error(ErrorKind::Io, "cannot write " + path);
    }
}

}  // namespace fsq
