#pragma once

// Random labelled scenes for recognition tests.

#include <vector>

#include "vcsim/synth/render.hpp"
#include "vcsim/synth/rng.hpp"
#include "vcsim/synth/trace.hpp"

namespace vcsim::testing {

struct LabelledFrame {
    GeoFrame frame;
    synth::SceneSpec scene;
};

inline bool clear_of(const synth::SceneItem& item, const std::vector<synth::SceneItem>& taken, int margin) {
    for (const auto& o : taken) {
        if (!(item.x + item.width() + margin <= o.x || o.x + o.width() + margin <= item.x ||
              item.y + item.height() + margin <= o.y || o.y + o.height() + margin <= item.y)) {
            return false;
        }
    }
    return true;
}

// One to three items (at least one plate) with scales in [1, max_scale],
// kept `margin` pixels apart on a width x height frame.
inline LabelledFrame random_labelled_frame(std::uint64_t seed, int width, int height, int max_scale, double noise,
                                           int margin = 2) {
    synth::Rng rng(seed);
    synth::SceneSpec scene;
    scene.background = static_cast<std::uint8_t>(rng.between(0, 110));
    const int n_items = static_cast<int>(rng.between(1, 3));
    for (int i = 0; i < n_items; ++i) {
        synth::SceneItem item;
        if (i == 0 || rng.chance(0.5)) {
            item.value = synth::random_plates(rng.next(), 1).front();
        } else {
            item.value = synth::random_faces(rng.next(), 1).front();
        }
        for (int attempt = 0; attempt < 64; ++attempt) {
            item.scale = static_cast<int>(rng.between(1, max_scale));
            if (item.width() > width || item.height() > height) continue;
            item.x = static_cast<int>(rng.between(0, width - item.width()));
            item.y = static_cast<int>(rng.between(0, height - item.height()));
            if (clear_of(item, scene.items, margin)) {
                scene.items.push_back(item);
                break;
            }
        }
    }
    const auto fix = GpsFix::from_degrees(45.0, 4.0, 1'700'000'000'000 + static_cast<std::int64_t>(seed));
    return {synth::compose_frame(scene, fix, 1, width, height, noise, rng.next()), scene};
}

} // namespace vcsim::testing
