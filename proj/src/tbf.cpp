#include "twinlab/tbf.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

constexpr char kMagic[4] = {'T', 'B', 'F', '1'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 8;
constexpr std::uint64_t kMaxPixels = std::uint64_t(1) << 30;

void put_u32(std::uint8_t* p, std::uint32_t v) {
    p[0] = std::uint8_t(v);
    p[1] = std::uint8_t(v >> 8);
    p[2] = std::uint8_t(v >> 16);
    p[3] = std::uint8_t(v >> 24);
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
           std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

void put_u64(std::uint8_t* p, std::uint64_t v) {
    put_u32(p, std::uint32_t(v));
    put_u32(p + 4, std::uint32_t(v >> 32));
}

std::uint64_t get_u64(const std::uint8_t* p) {
    return std::uint64_t(get_u32(p)) | std::uint64_t(get_u32(p + 4)) << 32;
}

}  // namespace

Frame read_frame(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCategory::io, "cannot open " + path);

    std::uint8_t header[kHeaderBytes];
    in.read(reinterpret_cast<char*>(header), kHeaderBytes);
    if (in.gcount() != std::streamsize(kHeaderBytes))
        throw Error(ErrorCategory::format, path + ": truncated header");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw Error(ErrorCategory::format, path + ": not a TBF file");

    Frame f;
    f.width = get_u32(header + 4);
    f.height = get_u32(header + 8);
    f.pixel_pitch_um = std::bit_cast<double>(get_u64(header + 12));
    if (f.width == 0 || f.height == 0)
        throw Error(ErrorCategory::format, path + ": zero dimension");
    const std::uint64_t n = std::uint64_t(f.width) * f.height;
    if (n > kMaxPixels)
        throw Error(ErrorCategory::format, path + ": dimension overflow");
    if (!(f.pixel_pitch_um > 0.0))
        throw Error(ErrorCategory::format, path + ": non-positive pixel pitch");

    std::vector<std::uint8_t> payload(n * 4);
    in.read(reinterpret_cast<char*>(payload.data()), payload.size());
    if (in.gcount() != std::streamsize(payload.size()))
        throw Error(ErrorCategory::format, path + ": truncated payload");
    in.get();
    if (!in.eof())
        throw Error(ErrorCategory::format, path + ": trailing bytes");

    f.data.resize(n);
    for (std::uint64_t i = 0; i < n; ++i)
        f.data[i] = std::bit_cast<float>(get_u32(payload.data() + i * 4));
    return f;
}

void write_frame(const Frame& frame, const std::string& path) {
    if (frame.width == 0 || frame.height == 0)
        throw Error(ErrorCategory::domain, "refusing to write empty frame");
    const std::uint64_t n = std::uint64_t(frame.width) * frame.height;
    if (n > kMaxPixels)
        throw Error(ErrorCategory::domain, "frame dimension overflow");
    if (frame.data.size() != n)
        throw Error(ErrorCategory::domain, "frame data length mismatch");

    std::vector<std::uint8_t> buf(kHeaderBytes + n * 4);
    std::memcpy(buf.data(), kMagic, 4);
    put_u32(buf.data() + 4, frame.width);
    put_u32(buf.data() + 8, frame.height);
    put_u64(buf.data() + 12, std::bit_cast<std::uint64_t>(frame.pixel_pitch_um));
    for (std::uint64_t i = 0; i < n; ++i)
        put_u32(buf.data() + kHeaderBytes + i * 4,
                std::bit_cast<std::uint32_t>(frame.data[i]));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCategory::io, "cannot create " + path);
    out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
    if (!out)
        throw Error(ErrorCategory::io, "short write to " + path);
}

}  // namespace twinlab
