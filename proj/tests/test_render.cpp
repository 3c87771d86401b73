#include <zlib.h>

#include "doctest.h"
#include "fsq/errors.hpp"
#include "fsq/render.hpp"
#include "test_support.hpp"

using namespace fsq;
using namespace fsq::testing;

namespace {

std::size_t count_color(const Image& img, Rgb c) {
    std::size_t count = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            count += img.at(x, y) == c;
        }
    }
    return count;
}

std::uint32_t read_u32(const std::vector<std::uint8_t>& b, std::size_t at) {
    return std::uint32_t{b[at]} << 24 | std::uint32_t{b[at + 1]} << 16 | std::uint32_t{b[at + 2]} << 8 | b[at + 3];
}

std::size_t count_substr(const std::string& s, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) {
        ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("attractor raster fills level-k cells with y upward") {
    Palette p;
    Image one = render_attractor(vicsek(), 1, 81, p);
    CHECK(count_color(one, p.attractor) == 5 * 27 * 27);
    // the centre block and the bottom middle block are filled, the corners are not
    CHECK(one.at(40, 40) == p.attractor);
    CHECK(one.at(40, 80) == p.attractor);
    CHECK(one.at(0, 0) == p.background);
    CHECK(one.at(80, 80) == p.background);

    Image four = render_attractor(vicsek(), 4, 81, p);
    CHECK(count_color(four, p.attractor) == 625);

    Image full = render_attractor(vicsek(), 0, 16, p);
    CHECK(count_color(full, p.attractor) == 256);

    // a single bottom-left digit lands in the bottom-left of the image
    Image corner = render_attractor(ds("2: 0,0 1,1"), 1, 4, p);
    CHECK(corner.at(0, 3) == p.attractor);
    CHECK(corner.at(3, 0) == p.attractor);
    CHECK(corner.at(0, 0) == p.background);
}

TEST_CASE("PNG encoding round-trips through zlib") {
    Image img = render_attractor(vicsek(), 2, 27);
    auto png = encode_png(img);
    REQUIRE(png.size() > 33);
    CHECK(png[1] == 'P');
    CHECK(read_u32(png, 16) == 27);
    CHECK(read_u32(png, 20) == 27);
    CHECK(png[24] == 8);
    CHECK(png[25] == 2);
    const std::size_t idat = 33;
    const std::uint32_t len = read_u32(png, idat);
    CHECK(std::string(png.begin() + idat + 4, png.begin() + idat + 8) == "IDAT");
    std::vector<std::uint8_t> raw(27 * (27 * 3 + 1));
    uLongf raw_len = raw.size();
    REQUIRE(uncompress(raw.data(), &raw_len, png.data() + idat + 8, len) == Z_OK);
    CHECK(raw_len == raw.size());
    for (int y = 0; y < 27; ++y) {
        CHECK(raw[y * (27 * 3 + 1)] == 0);
        for (int x = 0; x < 27; ++x) {
            const std::size_t at = y * (27 * 3 + 1) + 1 + x * 3;
            CHECK(Rgb{raw[at], raw[at + 1], raw[at + 2]} == img.at(x, y));
        }
    }
    CHECK(encode_png(render_attractor(vicsek(), 2, 27)) == png);
}

TEST_CASE("tree overlay paints the main-tree cells") {
    Palette p;
    Image img = render_tree_overlay(vicsek(), 2, 9, p);
    // the middle row and column of the 9x9 grid
    CHECK(count_color(img, p.tree) == 17);
    CHECK(img.at(4, 0) == p.tree);
    CHECK(img.at(0, 4) == p.tree);
    Image under = render_attractor(vicsek(), 2, 9, p);
    for (int y = 0; y < 9; ++y) {
        for (int x = 0; x < 9; ++x) {
            if (img.at(x, y) == p.tree) {
                CHECK(under.at(x, y) == p.attractor);
            }
        }
    }
    Image row = render_tree_overlay(ds("3: 0,1 1,1 2,1"), 2, 9, p);
    CHECK(count_color(row, p.tree) == 9);
    CHECK_THROWS_AS(render_tree_overlay(ds("2: 0,0 1,0 0,1"), 2, 8, p), Error);
}

TEST_CASE("diagram marks digits and face digits") {
    std::string svg = render_diagram(vicsek());
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count_substr(svg, "class=\"face\"") == 4);
    CHECK(count_substr(svg, "width=\"40\" height=\"40\"") == 5);
    CHECK(render_diagram(vicsek()) == svg);
    std::string none = render_diagram(ds("3: 1,1 1,0"));
    CHECK(count_substr(none, "class=\"face\"") == 1);
}
