#include "vcsim/extract/components.hpp"

#include <algorithm>
#include <span>

#include "vcsim/kernels/kernels.hpp"

namespace vcsim::extract {

namespace {

std::size_t count_white(const GeoFrame& f, int x, int y, int w, int h, std::uint8_t threshold) {
    std::size_t n = 0;
    for (int yy = y; yy < y + h; ++yy) {
        const auto row = std::span<const std::uint8_t>(f.pixels).subspan(static_cast<std::size_t>(yy) * f.width + x,
                                                                           static_cast<std::size_t>(w));
        n += kernels::count_at_least(row, threshold);
    }
    return n;
}

BoundingBox trim(const std::vector<std::int32_t>& labels, int width, const Component& c) {
    const BoundingBox& r = c.raw;
    std::vector<int> rows(static_cast<std::size_t>(r.h), 0);
    std::vector<int> cols(static_cast<std::size_t>(r.w), 0);
    for (int y = 0; y < r.h; ++y) {
        const std::int32_t* line = &labels[static_cast<std::size_t>(r.y + y) * width + r.x];
        for (int x = 0; x < r.w; ++x) {
            if (line[x] == c.label) {
                ++rows[static_cast<std::size_t>(y)];
                ++cols[static_cast<std::size_t>(x)];
            }
        }
    }
    int top = 0, bottom = r.h - 1, left = 0, right = r.w - 1;
    for (bool changed = true; changed && top < bottom && left < right;) {
        changed = false;
        const int w = right - left + 1;
        const int h = bottom - top + 1;
        if (rows[static_cast<std::size_t>(top)] * 4 < w) { ++top; changed = true; }
        if (rows[static_cast<std::size_t>(bottom)] * 4 < w) { --bottom; changed = true; }
        if (cols[static_cast<std::size_t>(left)] * 4 < h) { ++left; changed = true; }
        if (cols[static_cast<std::size_t>(right)] * 4 < h) { --right; changed = true; }
    }
    return BoundingBox{r.x + left, r.y + top, right - left + 1, bottom - top + 1};
}

} // namespace

std::vector<Component> find_components(const GeoFrame& frame, std::uint8_t threshold, int min_side) {
    const int width = frame.width;
    const int height = frame.height;
    std::vector<std::uint8_t> mask(frame.pixels.size());
    kernels::binarize(frame.pixels, mask, threshold);

    std::vector<std::int32_t> labels(frame.pixels.size(), 0);
    std::vector<Component> out;
    std::vector<std::int32_t> stack;
    std::int32_t next_label = 0;
    for (int sy = 0; sy < height; ++sy) {
        for (int sx = 0; sx < width; ++sx) {
            const std::size_t seed = static_cast<std::size_t>(sy) * width + sx;
            if (!mask[seed] || labels[seed] != 0) {
                continue;
            }
            Component c;
            c.label = ++next_label;
            int x0 = sx, x1 = sx, y0 = sy, y1 = sy;
            labels[seed] = c.label;
            stack.assign(1, static_cast<std::int32_t>(seed));
            while (!stack.empty()) {
                const auto idx = static_cast<std::size_t>(stack.back());
                stack.pop_back();
                ++c.pixels;
                const int x = static_cast<int>(idx % static_cast<std::size_t>(width));
                const int y = static_cast<int>(idx / static_cast<std::size_t>(width));
                x0 = std::min(x0, x); x1 = std::max(x1, x);
                y0 = std::min(y0, y); y1 = std::max(y1, y);
                auto visit = [&](std::size_t n) {
                    if (mask[n] && labels[n] == 0) {
                        labels[n] = c.label;
                        stack.push_back(static_cast<std::int32_t>(n));
                    }
                };
                if (x > 0) visit(idx - 1);
                if (x + 1 < width) visit(idx + 1);
                if (y > 0) visit(idx - static_cast<std::size_t>(width));
                if (y + 1 < height) visit(idx + static_cast<std::size_t>(width));
            }
            c.raw = BoundingBox{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
            if (c.raw.w < min_side || c.raw.h < min_side) {
                continue;
            }
            c.box = trim(labels, width, c);
            out.push_back(c);
        }
    }
    return out;
}

double ring_fill(const GeoFrame& frame, const BoundingBox& box, int offset, int thickness, std::uint8_t threshold) {
    const int x = box.x + offset;
    const int y = box.y + offset;
    const int w = box.w - 2 * offset;
    const int h = box.h - 2 * offset;
    if (w <= 2 * thickness || h <= 2 * thickness || thickness <= 0) {
        return 0.0;
    }
    const std::size_t white = count_white(frame, x, y, w, thickness, threshold) +
                              count_white(frame, x, y + h - thickness, w, thickness, threshold) +
                              count_white(frame, x, y + thickness, thickness, h - 2 * thickness, threshold) +
                              count_white(frame, x + w - thickness, y + thickness, thickness, h - 2 * thickness, threshold);
    const auto total = static_cast<double>(2 * w * thickness + 2 * thickness * (h - 2 * thickness));
    return static_cast<double>(white) / total;
}

bool block_majority(const GeoFrame& frame, int x, int y, int w, int h, std::uint8_t threshold) {
    return count_white(frame, x, y, w, h, threshold) * 2 >= static_cast<std::size_t>(w) * h;
}

} // namespace vcsim::extract
