#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chd/error.hpp"

namespace chd {

enum class ChannelOrder { RGB, BGR };

inline const char* channel_order_name(ChannelOrder o) {
    return o == ChannelOrder::RGB ? "RGB" : "BGR";
}

inline ChannelOrder channel_order_from_name(const std::string& name) {
    if (name == "RGB") return ChannelOrder::RGB;
    if (name == "BGR") return ChannelOrder::BGR;
    throw parse_error("unknown channel order '" + name + "'");
}

/// Dense (depth, height, width, channels) grid of real intensities, stored
/// row-major with channels fastest. The channel order tag matters only for
/// 2-D colour images (depth 1, 3 channels).
struct Volume {
    std::size_t depth = 1;
    std::size_t height = 1;
    std::size_t width = 1;
    std::size_t channels = 1;
    ChannelOrder order = ChannelOrder::RGB;
    std::vector<double> data;

    Volume() = default;
    Volume(std::size_t d, std::size_t h, std::size_t w, std::size_t c, double fill = 0.0,
           ChannelOrder ord = ChannelOrder::RGB)
        : depth(d), height(h), width(w), channels(c), order(ord), data(d * h * w * c, fill) {
        if (d < 1 || h < 1 || w < 1 || c < 1) throw shape_error("volume: every dim must be >= 1");
    }

    std::size_t size() const { return data.size(); }

    std::size_t index(std::size_t d, std::size_t h, std::size_t w, std::size_t c) const {
        return ((d * height + h) * width + w) * channels + c;
    }
    double& at(std::size_t d, std::size_t h, std::size_t w, std::size_t c) {
        return data[index(d, h, w, c)];
    }
    double at(std::size_t d, std::size_t h, std::size_t w, std::size_t c) const {
        return data[index(d, h, w, c)];
    }

    bool finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }

    bool operator==(const Volume&) const = default;
};

/// Returns the named colour channel of a 3-channel image as a single-channel
/// volume, resolving the name through the channel order tag. Green sits at
/// index 1 under both RGB and BGR.
inline Volume extract_channel(const Volume& image, const std::string& channel) {
    if (image.channels != 3) {
        throw shape_error("extract_channel: image has " + std::to_string(image.channels) +
                          " channels, expected 3");
    }
    std::size_t idx;
    if (channel == "green") {
        idx = 1;
    } else if (channel == "red") {
        idx = image.order == ChannelOrder::RGB ? 0 : 2;
    } else if (channel == "blue") {
        idx = image.order == ChannelOrder::RGB ? 2 : 0;
    } else {
        throw config_error("extract_channel: unknown channel '" + channel + "'");
    }
    Volume out(image.depth, image.height, image.width, 1);
    for (std::size_t d = 0; d < image.depth; ++d)
        for (std::size_t h = 0; h < image.height; ++h)
            for (std::size_t w = 0; w < image.width; ++w)
                out.at(d, h, w, 0) = image.at(d, h, w, idx);
    return out;
}

/// File format: one ASCII header line "depth height width channels order",
/// then row-major little-endian 64-bit floats.
inline void write_volume(const Volume& v, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw io_error("write_volume: cannot open '" + path + "'");
    out << v.depth << ' ' << v.height << ' ' << v.width << ' ' << v.channels << ' '
        << channel_order_name(v.order) << '\n';
    static_assert(sizeof(double) == 8);
    out.write(reinterpret_cast<const char*>(v.data.data()),
              static_cast<std::streamsize>(v.data.size() * sizeof(double)));
    if (!out.good()) throw io_error("write_volume: failed while writing '" + path + "'");
}

inline Volume read_volume(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw io_error("read_volume: cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw parse_error("read_volume: missing header line");
    std::istringstream hs(header);
    std::size_t d, h, w, c;
    std::string order;
    if (!(hs >> d >> h >> w >> c >> order)) {
        throw parse_error("read_volume: malformed header '" + header + "'");
    }
    Volume v(d, h, w, c, 0.0, channel_order_from_name(order));
    in.read(reinterpret_cast<char*>(v.data.data()),
            static_cast<std::streamsize>(v.data.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != v.data.size() * sizeof(double)) {
        throw parse_error("read_volume: truncated payload in '" + path + "'");
    }
    return v;
}

namespace detail {

inline int pnm_next_int(std::istream& in) {
    // skips whitespace and '#' comments
    for (;;) {
        int ch = in.peek();
        if (ch == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(ch)) {
            in.get();
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) throw parse_error("pnm: expected an integer token");
    return value;
}

} // namespace detail

/// Binary PGM (P5) and PPM (P6) import; intensities kept as raw values in
/// [0, maxval]. PPM data is RGB by convention and tagged as such.
inline Volume read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw io_error("read_pnm: cannot open '" + path + "'");
    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P6") {
        throw parse_error("read_pnm: unsupported magic '" + magic + "' (P5/P6 only)");
    }
    const std::size_t channels = magic == "P6" ? 3 : 1;
    const int width = detail::pnm_next_int(in);
    const int height = detail::pnm_next_int(in);
    const int maxval = detail::pnm_next_int(in);
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
        throw parse_error("read_pnm: bad dimensions or maxval");
    }
    in.get(); // the single whitespace byte before the raster

    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                          channels;
    std::vector<unsigned char> raw(n * bytes_per_sample);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw parse_error("read_pnm: truncated raster in '" + path + "'");
    }

    Volume v(1, static_cast<std::size_t>(height), static_cast<std::size_t>(width), channels);
    for (std::size_t i = 0; i < n; ++i) {
        if (bytes_per_sample == 1) {
            v.data[i] = static_cast<double>(raw[i]);
        } else {
            v.data[i] = static_cast<double>((raw[2 * i] << 8) | raw[2 * i + 1]);
        }
    }
    return v;
}

} // namespace chd
