#pragma once

#include <vector>

#include "chd/error.hpp"
#include "chd/volume.hpp"

namespace chd {

/// Sliding-window patches of a single-channel 2-D plane, flattened row-major
/// and ordered top-left to bottom-right.
inline std::vector<std::vector<double>> extract_patches(const Volume& plane, std::size_t ph,
                                                        std::size_t pw, std::size_t stride) {
    if (plane.depth != 1 || plane.channels != 1) {
        throw shape_error("extract_patches: expected a single-channel plane (depth 1)");
    }
    if (stride < 1) throw config_error("extract_patches: stride must be >= 1");
    if (ph < 1 || pw < 1 || ph > plane.height || pw > plane.width) {
        throw shape_error("extract_patches: patch size must fit inside the plane");
    }
    const std::size_t ny = (plane.height - ph) / stride + 1;
    const std::size_t nx = (plane.width - pw) / stride + 1;
    std::vector<std::vector<double>> patches;
    patches.reserve(ny * nx);
    for (std::size_t py = 0; py < ny; ++py) {
        for (std::size_t px = 0; px < nx; ++px) {
            std::vector<double> patch;
            patch.reserve(ph * pw);
            for (std::size_t y = 0; y < ph; ++y)
                for (std::size_t x = 0; x < pw; ++x)
                    patch.push_back(plane.at(0, py * stride + y, px * stride + x, 0));
            patches.push_back(std::move(patch));
        }
    }
    return patches;
}

/// Inverse of extract_patches for the non-overlapping case (stride equal to
/// the patch size). Regions not covered by a whole patch stay zero.
inline Volume reconstruct_patches(const std::vector<std::vector<double>>& patches,
                                  std::size_t height, std::size_t width, std::size_t ph,
                                  std::size_t pw) {
    if (ph < 1 || pw < 1 || ph > height || pw > width) {
        throw shape_error("reconstruct_patches: patch size must fit inside the plane");
    }
    const std::size_t ny = (height - ph) / ph + 1;
    const std::size_t nx = (width - pw) / pw + 1;
    if (patches.size() != ny * nx) {
        throw shape_error("reconstruct_patches: got " + std::to_string(patches.size()) +
                          " patches, expected " + std::to_string(ny * nx));
    }
    Volume plane(1, height, width, 1);
    for (std::size_t py = 0; py < ny; ++py) {
        for (std::size_t px = 0; px < nx; ++px) {
            const auto& patch = patches[py * nx + px];
            if (patch.size() != ph * pw) {
                throw shape_error("reconstruct_patches: patch has wrong length");
            }
            for (std::size_t y = 0; y < ph; ++y)
                for (std::size_t x = 0; x < pw; ++x)
                    plane.at(0, py * ph + y, px * pw + x, 0) = patch[y * pw + x];
        }
    }
    return plane;
}

} // namespace chd
