#include "voxrg/vio.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

namespace voxrg::vio {

namespace {

constexpr char kMagic[4] = {'V', 'V', 'L', '1'};

class Writer {
 public:
  explicit Writer(std::size_t reserve) { bytes_.reserve(reserve); }

  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) u8(static_cast<std::uint8_t>(v >> s));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(std::span<const std::uint8_t> b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }

  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  void need(std::size_t n, const char* what) const {
    if (remaining() < n) throw Error(ErrorCode::TruncatedPayload, std::string("file ends inside ") + what);
  }
  std::uint8_t u8() { return bytes_[pos_++]; }
  std::uint16_t u16() {
    const auto lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int s = 0; s < 32; s += 8) v |= static_cast<std::uint32_t>(u8()) << s;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::span<const std::uint8_t> raw(std::size_t n) {
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void header(Writer& w, Dtype dtype, const Dims& dims, const Spacing& spacing) {
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u8(static_cast<std::uint8_t>(dtype));
  w.u32(static_cast<std::uint32_t>(dims.nx));
  w.u32(static_cast<std::uint32_t>(dims.ny));
  w.u32(static_cast<std::uint32_t>(dims.nz));
  w.f32(spacing.sx);
  w.f32(spacing.sy);
  w.f32(spacing.sz);
  for (std::size_t i = 29; i < kHeaderSize; ++i) w.u8(0);
}

void expect_end(const Reader& r) {
  if (r.remaining() != 0) {
    throw Error(ErrorCode::BadPayload, std::to_string(r.remaining()) + " unexpected trailing bytes");
  }
}

}  // namespace

std::vector<std::uint8_t> encode(const Volume& volume) {
  Writer w(kHeaderSize + 4 * volume.dims().size());
  header(w, Dtype::Float32, volume.dims(), volume.spacing());
  for (float v : volume.data()) w.f32(v);
  return w.take();
}

std::vector<std::uint8_t> encode(const AtlasLabelMap& atlas) {
  Writer w(kHeaderSize + 2 * atlas.dims().size() + 64);
  header(w, Dtype::Uint16, atlas.dims(), atlas.spacing());
  for (LabelId l : atlas.labels()) w.u16(l);
  w.u32(static_cast<std::uint32_t>(atlas.label_names().size()));
  for (const auto& [id, name] : atlas.label_names()) {
    w.u16(id);
    w.u32(static_cast<std::uint32_t>(name.size()));
    w.raw({reinterpret_cast<const std::uint8_t*>(name.data()), name.size()});
  }
  return w.take();
}

std::vector<std::uint8_t> encode(const BinaryMask& mask) {
  Writer w(kHeaderSize + mask.dims().size());
  header(w, Dtype::Uint8, mask.dims(), mask.spacing());
  w.raw(mask.bits());
  return w.take();
}

std::vector<std::uint8_t> encode(const Grid& grid) {
  return std::visit([](const auto& g) { return encode(g); }, grid);
}

Grid decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::BadMagic, "not a VVL1 file");
  }
  Reader r(bytes);
  r.need(kHeaderSize, "the header");
  r.raw(4);
  const std::uint8_t code = r.u8();
  if (code < 1 || code > 3) throw Error(ErrorCode::BadDtype, "unknown dtype code " + std::to_string(code));
  const auto dtype = static_cast<Dtype>(code);

  std::uint32_t raw_dims[3] = {r.u32(), r.u32(), r.u32()};
  for (auto d : raw_dims) {
    if (d < 1 || d > static_cast<std::uint32_t>(INT32_MAX)) throw Error(ErrorCode::BadHeader, "dims must be >= 1");
  }
  const Dims dims{static_cast<int>(raw_dims[0]), static_cast<int>(raw_dims[1]), static_cast<int>(raw_dims[2])};
  const Spacing spacing{r.f32(), r.f32(), r.f32()};
  for (float s : {spacing.sx, spacing.sy, spacing.sz}) {
    if (!std::isfinite(s) || !(s > 0.0F)) throw Error(ErrorCode::BadHeader, "spacing must be finite and > 0");
  }
  for (auto b : r.raw(kHeaderSize - 29)) {
    if (b != 0) throw Error(ErrorCode::BadHeader, "reserved header bytes must be zero");
  }

  const std::size_t n = dims.size();
  switch (dtype) {
    case Dtype::Float32: {
      if (n > r.remaining() / 4) throw Error(ErrorCode::TruncatedPayload, "payload shorter than " + to_string(dims));
      std::vector<float> data(n);
      for (auto& v : data) {
        v = r.f32();
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteData, "intensity payload contains NaN or Inf");
      }
      expect_end(r);
      return Volume(dims, spacing, std::move(data));
    }
    case Dtype::Uint16: {
      if (n > r.remaining() / 2) throw Error(ErrorCode::TruncatedPayload, "payload shorter than " + to_string(dims));
      std::vector<LabelId> labels(n);
      for (auto& l : labels) l = r.u16();
      r.need(4, "the label-name table");
      const std::uint32_t count = r.u32();
      std::map<LabelId, std::string> names;
      for (std::uint32_t k = 0; k < count; ++k) {
        r.need(6, "a label-name record");
        const LabelId id = r.u16();
        const std::uint32_t len = r.u32();
        r.need(len, "a label name");
        const auto b = r.raw(len);
        if (id == 0 || !names.emplace(id, std::string(b.begin(), b.end())).second) {
          throw Error(ErrorCode::BadPayload, "invalid or duplicate label id " + std::to_string(id));
        }
      }
      expect_end(r);
      try {
        return AtlasLabelMap(dims, std::move(labels), std::move(names), spacing);
      } catch (const Error& e) {
        throw Error(ErrorCode::BadPayload, e.what());
      }
    }
    case Dtype::Uint8: {
      if (n > r.remaining()) throw Error(ErrorCode::TruncatedPayload, "payload shorter than " + to_string(dims));
      const auto b = r.raw(n);
      if (std::any_of(b.begin(), b.end(), [](std::uint8_t v) { return v > 1; })) {
        throw Error(ErrorCode::BadPayload, "mask bytes must be 0 or 1");
      }
      expect_end(r);
      return BinaryMask(dims, std::vector<std::uint8_t>(b.begin(), b.end()), spacing);
    }
  }
  throw Error(ErrorCode::BadDtype, "unknown dtype");
}

void write(const std::filesystem::path& path, const Grid& grid) {
  const auto bytes = encode(grid);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

Grid read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoError, "failed reading " + path.string());
  return decode(bytes);
}

namespace {

template <typename T>
T read_as(const std::filesystem::path& path, const char* kind) {
  Grid g = read(path);
  if (auto* v = std::get_if<T>(&g)) return std::move(*v);
  throw Error(ErrorCode::BadDtype, path.string() + " is not a " + kind + " file");
}

}  // namespace

Volume read_volume(const std::filesystem::path& path) { return read_as<Volume>(path, "float32 volume"); }
AtlasLabelMap read_atlas(const std::filesystem::path& path) { return read_as<AtlasLabelMap>(path, "uint16 label"); }
BinaryMask read_mask(const std::filesystem::path& path) { return read_as<BinaryMask>(path, "uint8 mask"); }

}  // namespace voxrg::vio
