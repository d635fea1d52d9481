#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "shapetree/boundary.hpp"
#include "shapetree/core.hpp"

namespace shapetree {

// Grayscale raster; pixel values above 127 are foreground.
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    bool foreground(int x, int y) const {
        return in_bounds(x, y) && pixels[static_cast<std::size_t>(y) * width + x] > 127;
    }
};

namespace detail {

// Next token in a PGM header, skipping whitespace and '#' comments.
inline std::string pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

}  // namespace detail

// Read a PGM image, either ASCII (P2) or binary (P5). Maxval up to 255.
inline RasterImage read_pgm(std::istream& in) {
    const std::string magic = detail::pgm_token(in);
    if (magic != "P2" && magic != "P5")
        throw ParseError("PGM: expected magic P2 or P5, got \"" + magic + "\"");

    auto read_int = [&](const char* what) {
        const std::string tok = detail::pgm_token(in);
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
            return v;
        } catch (const std::logic_error&) {
            throw ParseError(std::string("PGM: malformed ") + what + " \"" + tok + "\"");
        }
    };

    RasterImage img;
    img.width = read_int("width");
    img.height = read_int("height");
    const int maxval = read_int("maxval");
    if (img.width <= 0 || img.height <= 0) throw ParseError("PGM: non-positive dimensions");
    if (maxval <= 0 || maxval > 255) throw ParseError("PGM: unsupported maxval " + std::to_string(maxval));

    const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(count);
    if (magic == "P5") {
        // Binary data starts right after the single whitespace consumed by the
        // maxval token read.
        in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            throw ParseError("PGM: truncated binary pixel data");
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const int v = read_int("pixel");
            if (v > maxval) throw ParseError("PGM: pixel value exceeds maxval");
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

// Trace the outer contour of the single 4-connected foreground region with
// Moore-neighbor tracing, one point per boundary pixel center, (x, y) = (col,
// row). Orientation is normalized to counter-clockwise by finalize_boundary.
inline SampledBoundary trace_raster_boundary(const RasterImage& img) {
    // Locate the start pixel (topmost row, then leftmost column).
    int sx = -1, sy = -1;
    for (int y = 0; y < img.height && sx < 0; ++y)
        for (int x = 0; x < img.width; ++x)
            if (img.foreground(x, y)) {
                sx = x;
                sy = y;
                break;
            }
    if (sx < 0) throw TraceError("raster trace: empty image (no foreground pixels)");

    // The foreground must form one 4-connected region.
    {
        std::vector<char> seen(img.pixels.size(), 0);
        std::vector<std::pair<int, int>> stack{{sx, sy}};
        seen[static_cast<std::size_t>(sy) * img.width + sx] = 1;
        std::size_t reached = 0, total = 0;
        while (!stack.empty()) {
            auto [x, y] = stack.back();
            stack.pop_back();
            ++reached;
            const int nx[4] = {x + 1, x - 1, x, x};
            const int ny[4] = {y, y, y + 1, y - 1};
            for (int k = 0; k < 4; ++k)
                if (img.foreground(nx[k], ny[k])) {
                    const std::size_t idx = static_cast<std::size_t>(ny[k]) * img.width + nx[k];
                    if (!seen[idx]) {
                        seen[idx] = 1;
                        stack.push_back({nx[k], ny[k]});
                    }
                }
        }
        for (std::size_t i = 0; i < img.pixels.size(); ++i)
            if (img.pixels[i] > 127) ++total;
        if (reached != total)
            throw TraceError("raster trace: multiple foreground components (" +
                             std::to_string(total - reached) + " pixels unreachable)");
    }

    // Moore neighborhood indexed clockwise (rows grow downward):
    // 0 E, 1 SE, 2 S, 3 SW, 4 W, 5 NW, 6 N, 7 NE.
    static constexpr int dx8[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static constexpr int dy8[8] = {0, 1, 1, 1, 0, -1, -1, -1};

    // The backtrack is the background pixel the walk "came from"; each scan
    // starts just past it, clockwise around the current pixel. Returns the
    // direction of the next contour pixel and updates the backtrack to the
    // last background pixel examined, or returns -1 for an isolated pixel.
    auto advance = [&](int cx, int cy, int& bx, int& by) {
        int bdir = -1;
        for (int k = 0; k < 8; ++k)
            if (cx + dx8[k] == bx && cy + dy8[k] == by) {
                bdir = k;
                break;
            }
        for (int k = 1; k <= 8; ++k) {
            const int cand = (bdir + k) % 8;
            if (img.foreground(cx + dx8[cand], cy + dy8[cand])) {
                const int prev = (bdir + k - 1) % 8;
                bx = cx + dx8[prev];
                by = cy + dy8[prev];
                return cand;
            }
        }
        return -1;
    };

    std::vector<Vec2> contour;
    contour.push_back({static_cast<double>(sx), static_cast<double>(sy)});

    // Scan order guarantees the west neighbor of the start is background.
    int bx = sx - 1, by = sy;
    const int first_dir = advance(sx, sy, bx, by);
    if (first_dir >= 0) {
        int cx = sx + dx8[first_dir];
        int cy = sy + dy8[first_dir];
        contour.push_back({static_cast<double>(cx), static_cast<double>(cy)});
        // The walk cycles deterministically through (pixel, backtrack) states
        // and stops when it is back at the start about to repeat its first
        // move; the step cap is a safety net only.
        const std::size_t max_steps = 4 * img.pixels.size() + 8;
        for (std::size_t step = 0; step < max_steps; ++step) {
            const int dir = advance(cx, cy, bx, by);
            if (dir < 0) break;
            if (cx == sx && cy == sy && dir == first_dir) break;
            cx += dx8[dir];
            cy += dy8[dir];
            contour.push_back({static_cast<double>(cx), static_cast<double>(cy)});
        }
    }

    return finalize_boundary(std::move(contour));
}

}  // namespace shapetree
