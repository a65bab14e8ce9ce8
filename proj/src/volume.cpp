#include "atom/volume.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "atom/rng.hpp"
#include "json.hpp"

static_assert(std::endian::native == std::endian::little,
              "atomvol payloads are little-endian; big-endian hosts are unsupported");

namespace atom {

void Volume::validate() const {
    for (int axis = 0; axis < 3; ++axis) {
        if (dims[axis] < 2)
            throw std::runtime_error("volume dimension " + std::to_string(axis) +
                                     " must be >= 2, got " + std::to_string(dims[axis]));
    }
    if (data.size() != voxel_count())
        throw std::runtime_error("volume data length " + std::to_string(data.size()) +
                                 " does not match dims product " +
                                 std::to_string(voxel_count()));
    for (float v : data) {
        if (!std::isfinite(v)) throw std::runtime_error("volume contains a non-finite intensity");
        if (normalized && (v < 0.0f || v > 1.0f))
            throw std::runtime_error("volume flagged normalized but intensity out of [0,1]");
    }
}

PhantomKind phantom_kind_from_string(const std::string& name) {
    if (name == "blobs") return PhantomKind::blobs;
    if (name == "smooth-noise") return PhantomKind::smooth_noise;
    if (name == "shells") return PhantomKind::shells;
    throw std::runtime_error("unknown phantom kind: " + name);
}

std::string to_string(PhantomKind kind) {
    switch (kind) {
        case PhantomKind::blobs: return "blobs";
        case PhantomKind::smooth_noise: return "smooth-noise";
        case PhantomKind::shells: return "shells";
    }
    throw std::runtime_error("unknown phantom kind value");
}

namespace {

// "foo", "foo.json" and "foo.bin" all map to stem "foo".
std::string strip_atomvol_suffix(const std::string& path) {
    for (const char* suffix : {".json", ".bin"}) {
        const std::size_t n = std::strlen(suffix);
        if (path.size() > n && path.compare(path.size() - n, n, suffix) == 0)
            return path.substr(0, path.size() - n);
    }
    return path;
}

}  // namespace

Volume load_volume(const std::string& path) {
    const std::string stem = strip_atomvol_suffix(path);
    const std::string header_path = stem + ".json";
    const std::string payload_path = stem + ".bin";

    std::ifstream header_file(header_path);
    if (!header_file) throw std::runtime_error("cannot open volume header: " + header_path);
    nlohmann::json header;
    try {
        header_file >> header;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed volume header " + header_path + ": " + e.what());
    }

    if (header.value("version", 0) != 1)
        throw std::runtime_error("unsupported volume format version in " + header_path);
    if (header.value("dtype", "") != "f32le")
        throw std::runtime_error("unsupported dtype in " + header_path);

    Volume vol;
    const auto& dims = header.at("dims");
    if (!dims.is_array() || dims.size() != 3)
        throw std::runtime_error("dims must be a 3-element array in " + header_path);
    for (int axis = 0; axis < 3; ++axis) vol.dims[axis] = dims[axis].get<int>();
    vol.normalized = header.at("normalized").get<bool>();

    std::ifstream payload(payload_path, std::ios::binary | std::ios::ate);
    if (!payload) throw std::runtime_error("cannot open volume payload: " + payload_path);
    const std::streamoff actual_bytes = payload.tellg();
    const std::size_t expected_bytes = vol.voxel_count() * sizeof(float);
    if (static_cast<std::size_t>(actual_bytes) != expected_bytes)
        throw std::runtime_error("volume payload size mismatch in " + payload_path + ": expected " +
                                 std::to_string(expected_bytes) + " bytes, found " +
                                 std::to_string(actual_bytes));
    payload.seekg(0);
    vol.data.resize(vol.voxel_count());
    payload.read(reinterpret_cast<char*>(vol.data.data()),
                 static_cast<std::streamsize>(expected_bytes));
    if (!payload) throw std::runtime_error("short read from volume payload: " + payload_path);

    vol.validate();
    return vol;
}

void save_volume(const Volume& vol, const std::string& path) {
    vol.validate();
    const std::string stem = strip_atomvol_suffix(path);
    const std::string header_path = stem + ".json";
    const std::string payload_path = stem + ".bin";

    nlohmann::json header = {{"version", 1},
                             {"dims", {vol.dims[0], vol.dims[1], vol.dims[2]}},
                             {"dtype", "f32le"},
                             {"normalized", vol.normalized}};
    std::ofstream header_file(header_path, std::ios::trunc);
    if (!header_file) throw std::runtime_error("cannot write volume header: " + header_path);
    header_file << header.dump() << '\n';
    if (!header_file.flush()) throw std::runtime_error("write failure on " + header_path);

    std::ofstream payload(payload_path, std::ios::binary | std::ios::trunc);
    if (!payload) throw std::runtime_error("cannot write volume payload: " + payload_path);
    payload.write(reinterpret_cast<const char*>(vol.data.data()),
                  static_cast<std::streamsize>(vol.data.size() * sizeof(float)));
    if (!payload.flush()) throw std::runtime_error("write failure on " + payload_path);
}

namespace {

Volume blobs_phantom(const PhantomSpec& spec, Rng& rng) {
    const auto [nx, ny, nz] = spec.dims;
    struct Bump {
        double cx, cy, cz, inv_two_sigma_sq, amplitude;
    };
    std::vector<Bump> bumps;
    bumps.reserve(static_cast<std::size_t>(spec.component_count));
    const double side = static_cast<double>(std::max({nx, ny, nz}));
    for (int b = 0; b < spec.component_count; ++b) {
        Bump bump;
        bump.cx = rng.uniform(0.0, nx - 1.0);
        bump.cy = rng.uniform(0.0, ny - 1.0);
        bump.cz = rng.uniform(0.0, nz - 1.0);
        const double sigma = rng.uniform(side / 10.0, side / 4.0);
        bump.inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
        bump.amplitude = rng.uniform(0.5, 1.0);
        bumps.push_back(bump);
    }

    Volume vol(spec.dims);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            for (int iz = 0; iz < nz; ++iz) {
                double value = 0.0;
                for (const Bump& bump : bumps) {
                    const double dx = ix - bump.cx;
                    const double dy = iy - bump.cy;
                    const double dz = iz - bump.cz;
                    value += bump.amplitude *
                             std::exp(-(dx * dx + dy * dy + dz * dz) * bump.inv_two_sigma_sq);
                }
                vol.at(ix, iy, iz) = static_cast<float>(value);
            }
    return vol;
}

Volume smooth_noise_phantom(const PhantomSpec& spec, Rng& rng) {
    const auto [nx, ny, nz] = spec.dims;
    constexpr int kWaves = 12;
    struct Wave {
        double kx, ky, kz, phase, amplitude;
    };
    std::vector<Wave> waves;
    waves.reserve(kWaves);
    for (int w = 0; w < kWaves; ++w) {
        Wave wave;
        // Low spatial frequencies only: 0.5 .. 2.5 periods across each axis.
        wave.kx = 2.0 * M_PI * rng.uniform(0.5, 2.5) / std::max(1, nx - 1);
        wave.ky = 2.0 * M_PI * rng.uniform(0.5, 2.5) / std::max(1, ny - 1);
        wave.kz = 2.0 * M_PI * rng.uniform(0.5, 2.5) / std::max(1, nz - 1);
        wave.phase = rng.uniform(0.0, 2.0 * M_PI);
        wave.amplitude = rng.uniform(0.3, 1.0);
        waves.push_back(wave);
    }

    Volume vol(spec.dims);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            for (int iz = 0; iz < nz; ++iz) {
                double value = 0.0;
                for (const Wave& wave : waves)
                    value += wave.amplitude *
                             std::cos(wave.kx * ix + wave.ky * iy + wave.kz * iz + wave.phase);
                vol.at(ix, iy, iz) = static_cast<float>(value);
            }
    return vol;
}

Volume shells_phantom(const PhantomSpec& spec, Rng& rng) {
    const auto [nx, ny, nz] = spec.dims;
    const double cx = (nx - 1) / 2.0;
    const double cy = (ny - 1) / 2.0;
    const double cz = (nz - 1) / 2.0;
    // Radial scale, jittered +-10% by the seed.
    const double radius = 0.5 * std::max({nx - 1, ny - 1, nz - 1}) * rng.uniform(0.9, 1.1);

    Volume vol(spec.dims);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            for (int iz = 0; iz < nz; ++iz) {
                const double dx = ix - cx;
                const double dy = iy - cy;
                const double dz = iz - cz;
                const double r_sq = (dx * dx + dy * dy + dz * dz) / (radius * radius);
                vol.at(ix, iy, iz) = static_cast<float>(1.0 / (1.0 + r_sq));
            }
    return vol;
}

}  // namespace

Volume generate_phantom(const PhantomSpec& spec) {
    for (int axis = 0; axis < 3; ++axis)
        if (spec.dims[axis] < 2)
            throw std::runtime_error("phantom dims must be >= 2 per axis");
    if (spec.kind == PhantomKind::blobs && spec.component_count < 1)
        throw std::runtime_error("blobs phantom needs component_count >= 1");

    Rng rng = derive_rng(spec.seed, {static_cast<std::uint64_t>(spec.kind)});
    Volume vol;
    switch (spec.kind) {
        case PhantomKind::blobs: vol = blobs_phantom(spec, rng); break;
        case PhantomKind::smooth_noise: vol = smooth_noise_phantom(spec, rng); break;
        case PhantomKind::shells: vol = shells_phantom(spec, rng); break;
        default: throw std::runtime_error("unknown phantom kind value");
    }
    return normalize(vol);
}

Volume normalize(const Volume& vol) {
    if (vol.data.empty()) throw std::runtime_error("cannot normalize an empty volume");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (float v : vol.data) {
        if (!std::isfinite(v)) throw std::runtime_error("cannot normalize non-finite intensities");
        lo = std::min(lo, static_cast<double>(v));
        hi = std::max(hi, static_cast<double>(v));
    }

    Volume out = vol;
    out.normalized = true;
    if (hi == lo) {
        std::fill(out.data.begin(), out.data.end(), 0.0f);
        return out;
    }
    const double range = hi - lo;
    for (float& v : out.data) v = static_cast<float>((v - lo) / range);
    return out;
}

Volume downsample(const Volume& vol, std::array<int, 3> target) {
    vol.validate();
    for (int axis = 0; axis < 3; ++axis)
        if (target[axis] < 2)
            throw std::runtime_error("downsample target dimension must be >= 2");

    std::array<double, 3> scale{};
    for (int axis = 0; axis < 3; ++axis)
        scale[axis] = static_cast<double>(vol.dims[axis] - 1) / (target[axis] - 1);

    Volume out(target);
    out.normalized = vol.normalized;
    for (int ix = 0; ix < target[0]; ++ix)
        for (int iy = 0; iy < target[1]; ++iy)
            for (int iz = 0; iz < target[2]; ++iz)
                out.at(ix, iy, iz) = static_cast<float>(
                    trilinear_sample(vol, ix * scale[0], iy * scale[1], iz * scale[2]));
    return out;
}

double trilinear_sample(const Volume& vol, double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw std::runtime_error("trilinear_sample: non-finite sample point");

    const auto [nx, ny, nz] = vol.dims;
    // Clamp-to-edge, then anchor the 8-voxel cell; at the upper face the
    // anchor steps back one so base+1 stays in range (fraction becomes 1).
    const double cx = std::clamp(x, 0.0, static_cast<double>(nx - 1));
    const double cy = std::clamp(y, 0.0, static_cast<double>(ny - 1));
    const double cz = std::clamp(z, 0.0, static_cast<double>(nz - 1));
    const int bx = std::min(static_cast<int>(cx), nx - 2);
    const int by = std::min(static_cast<int>(cy), ny - 2);
    const int bz = std::min(static_cast<int>(cz), nz - 2);
    const double fx = cx - bx;
    const double fy = cy - by;
    const double fz = cz - bz;

    const double c000 = vol.at(bx, by, bz);
    const double c001 = vol.at(bx, by, bz + 1);
    const double c010 = vol.at(bx, by + 1, bz);
    const double c011 = vol.at(bx, by + 1, bz + 1);
    const double c100 = vol.at(bx + 1, by, bz);
    const double c101 = vol.at(bx + 1, by, bz + 1);
    const double c110 = vol.at(bx + 1, by + 1, bz);
    const double c111 = vol.at(bx + 1, by + 1, bz + 1);

    const double c00 = c000 * (1.0 - fx) + c100 * fx;
    const double c01 = c001 * (1.0 - fx) + c101 * fx;
    const double c10 = c010 * (1.0 - fx) + c110 * fx;
    const double c11 = c011 * (1.0 - fx) + c111 * fx;
    const double c0 = c00 * (1.0 - fy) + c10 * fy;
    const double c1 = c01 * (1.0 - fy) + c11 * fy;
    return c0 * (1.0 - fz) + c1 * fz;
}

}  // namespace atom
