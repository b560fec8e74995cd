#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "mesh.hpp"

namespace spheredepth {

// Per-face feature array of shape (batch, 20*4^level, channels). For image
// payloads at triangle resolution t the channel axis packs c*4^t values in
// sample-major order: [sample0 c values, sample1 c values, ...].
template <class T>
struct MeshTensorT {
  int level = 0;
  int tr = 0;
  int batch = 1;
  int channels = 0;
  std::vector<T> data;

  MeshTensorT() = default;
  MeshTensorT(int level_, int tr_, int batch_, int channels_)
      : level(level_), tr(tr_), batch(batch_), channels(channels_),
        data(static_cast<std::size_t>(batch_) * static_cast<std::size_t>(face_count(level_)) *
                 static_cast<std::size_t>(channels_),
             T{0}) {}

  std::int64_t faces() const { return face_count(level); }
  std::int64_t size() const { return static_cast<std::int64_t>(data.size()); }

  T* row(std::int64_t b, std::int64_t f) { return data.data() + (b * faces() + f) * channels; }
  const T* row(std::int64_t b, std::int64_t f) const {
    return data.data() + (b * faces() + f) * channels;
  }
  T& at(std::int64_t b, std::int64_t f, std::int64_t c) { return row(b, f)[c]; }
  const T& at(std::int64_t b, std::int64_t f, std::int64_t c) const { return row(b, f)[c]; }

  bool same_shape(const MeshTensorT& o) const {
    return level == o.level && batch == o.batch && channels == o.channels;
  }

  bool all_finite() const {
    for (const T& v : data)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }
};

using MeshTensor = MeshTensorT<float>;

template <class T>
void require_same_shape(const MeshTensorT<T>& a, const MeshTensorT<T>& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(what) + ": shape mismatch (" + std::to_string(a.batch) + "," +
                     std::to_string(a.faces()) + "," + std::to_string(a.channels) + ") vs (" +
                     std::to_string(b.batch) + "," + std::to_string(b.faces()) + "," +
                     std::to_string(b.channels) + ")");
  }
}

}  // namespace spheredepth
