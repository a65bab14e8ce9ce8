// 3D scalar intensity volumes: container, file I/O, synthetic phantoms,
// normalization, downsampling and trilinear point sampling.
//
// Conventions shared by the whole pipeline:
//   - voxel (ix, iy, iz) sits at continuous coordinate (ix, iy, iz)
//     (voxel centers on the integer lattice);
//   - linear storage index is (ix*Ny + iy)*Nz + iz;
//   - intensities are stored as float32, interpolation runs in double.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace atom {

struct Volume {
    std::array<int, 3> dims{0, 0, 0};  // Nx, Ny, Nz
    std::vector<float> data;           // Nx*Ny*Nz scalars
    bool normalized = false;

    Volume() = default;
    Volume(std::array<int, 3> d, float fill = 0.0f)
        : dims(d),
          data(static_cast<std::size_t>(d[0]) * d[1] * d[2], fill) {}

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * dims[1] + iy) * dims[2] + iz;
    }
    float at(int ix, int iy, int iz) const { return data[index(ix, iy, iz)]; }
    float& at(int ix, int iy, int iz) { return data[index(ix, iy, iz)]; }

    std::size_t voxel_count() const {
        return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    }

    // Throws std::runtime_error if any structural invariant is violated
    // (dims >= 2 per axis, data length, finiteness; normalized => [0,1]).
    void validate() const;
};

enum class PhantomKind { blobs, smooth_noise, shells };

PhantomKind phantom_kind_from_string(const std::string& name);
std::string to_string(PhantomKind kind);

struct PhantomSpec {
    PhantomKind kind = PhantomKind::blobs;
    std::array<int, 3> dims{20, 20, 20};
    std::uint64_t seed = 0;
    int component_count = 8;  // blobs only
};

// File I/O ("atomvol" pair): <stem>.json header + <stem>.bin payload of
// float32 little-endian scalars in linear order. `path` may be the stem or
// the .json header path.
Volume load_volume(const std::string& path);
void save_volume(const Volume& vol, const std::string& path);

// Deterministic synthetic volume; output is normalized. Same spec, same data.
//   blobs        sum of `component_count` Gaussian bumps with seeded
//                centers/widths/amplitudes.
//   smooth-noise sum of 12 low-frequency cosine waves with seeded
//                wave vectors and phases.
//   shells       monotone radial profile 1/(1 + (r/R)^2) decreasing from the
//                volume center; R is mildly seed-jittered.
Volume generate_phantom(const PhantomSpec& spec);

// Affine rescale of intensities to [0, 1]; a constant volume maps to zeros.
Volume normalize(const Volume& vol);

// Resamples to `target` dims; output voxel (i,j,k) takes the trilinear
// sample at input coordinate i*(N-1)/(T-1) per axis.
Volume downsample(const Volume& vol, std::array<int, 3> target);

// Trilinear interpolation of the 8 surrounding voxels, coordinates clamped
// per axis to [0, N-1] first.
double trilinear_sample(const Volume& vol, double x, double y, double z);

}  // namespace atom
