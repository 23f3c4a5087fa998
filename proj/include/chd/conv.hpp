#pragma once

#include <string>
#include <vector>

#include "chd/activation.hpp"
#include "chd/error.hpp"
#include "chd/volume.hpp"

namespace chd {

/// One convolution layer: a 4-D kernel per output channel (laid out
/// [out_channel][kd][kh][kw][in_channel]), one bias per output channel, and
/// an activation applied to every output element.
struct ConvLayerSpec {
    std::size_t out_channels = 1;
    std::size_t kd = 1;
    std::size_t kh = 1;
    std::size_t kw = 1;
    std::size_t in_channels = 1;
    std::vector<double> kernel;
    std::vector<double> bias;
    Activation activation = Activation::relu;

    std::size_t kernel_size() const { return out_channels * kd * kh * kw * in_channels; }

    std::size_t kernel_index(std::size_t oc, std::size_t zd, std::size_t zh, std::size_t zw,
                             std::size_t ic) const {
        return (((oc * kd + zd) * kh + zh) * kw + zw) * in_channels + ic;
    }

    void validate() const {
        if (out_channels < 1 || kd < 1 || kh < 1 || kw < 1 || in_channels < 1) {
            throw shape_error("conv layer: every kernel dim must be >= 1");
        }
        if (kernel.size() != kernel_size()) {
            throw shape_error("conv layer: kernel has " + std::to_string(kernel.size()) +
                              " entries, expected " + std::to_string(kernel_size()));
        }
        if (bias.size() != out_channels) {
            throw shape_error("conv layer: bias has " + std::to_string(bias.size()) +
                              " entries, expected " + std::to_string(out_channels));
        }
    }

    bool operator==(const ConvLayerSpec&) const = default;
};

/// Sliding-window cross-correlation with valid padding and stride 1:
/// out[b] = act( sum over input channels of (kernel . window) + bias[b] ).
/// Output spatial dims are input minus kernel plus one.
inline Volume conv3d_forward(const Volume& input, const ConvLayerSpec& layer) {
    layer.validate();
    if (layer.in_channels != input.channels) {
        throw shape_error("conv3d_forward: layer expects " + std::to_string(layer.in_channels) +
                          " input channels, volume has " + std::to_string(input.channels));
    }
    if (layer.kd > input.depth || layer.kh > input.height || layer.kw > input.width) {
        throw shape_error("conv3d_forward: kernel exceeds input dims");
    }

    const std::size_t od = input.depth - layer.kd + 1;
    const std::size_t oh = input.height - layer.kh + 1;
    const std::size_t ow = input.width - layer.kw + 1;
    Volume out(od, oh, ow, layer.out_channels);

    for (std::size_t oc = 0; oc < layer.out_channels; ++oc) {
        for (std::size_t d = 0; d < od; ++d) {
            for (std::size_t h = 0; h < oh; ++h) {
                for (std::size_t w = 0; w < ow; ++w) {
                    double acc = layer.bias[oc];
                    for (std::size_t zd = 0; zd < layer.kd; ++zd)
                        for (std::size_t zh = 0; zh < layer.kh; ++zh)
                            for (std::size_t zw = 0; zw < layer.kw; ++zw)
                                for (std::size_t ic = 0; ic < layer.in_channels; ++ic)
                                    acc += layer.kernel[layer.kernel_index(oc, zd, zh, zw, ic)] *
                                           input.at(d + zd, h + zh, w + zw, ic);
                    out.at(d, h, w, oc) = apply_activation(layer.activation, acc);
                }
            }
        }
    }
    return out;
}

} // namespace chd
