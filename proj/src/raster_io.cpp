#include "mht/basin.hpp"

#include "mht/version.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace mht {

namespace {

constexpr std::array<char, 8> kMagic{'M', 'H', 'T', 'B', 'A', 'S', 'I', 'N'};
constexpr std::uint8_t kTagEquilibrium = 0;
constexpr std::uint8_t kTagCycle = 1;
constexpr int kMaxResolution = 1 << 15;

class Writer {
public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const char* data, std::size_t n) { out_.write(data, static_cast<std::streamsize>(n)); }
  void u8(std::uint8_t x) { out_.put(static_cast<char>(x)); }
  void u32(std::uint32_t x) { uint(x, 4); }
  void u64(std::uint64_t x) { uint(x, 8); }
  void f64(double x) { u64(std::bit_cast<std::uint64_t>(x)); }

private:
  void uint(std::uint64_t x, int width) {
    for (int i = 0; i < width; ++i) u8(static_cast<std::uint8_t>(x >> (8 * i)));
  }
  std::ostream& out_;
};

class Reader {
public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* data, std::size_t n) {
    in_.read(data, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw RasterFormatError("truncated raster");
  }
  std::uint8_t u8() {
    char c = 0;
    bytes(&c, 1);
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  std::uint64_t u64() { return uint(8); }
  double f64() { return std::bit_cast<double>(u64()); }

private:
  std::uint64_t uint(int width) {
    std::uint64_t x = 0;
    for (int i = 0; i < width; ++i) x |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return x;
  }
  std::istream& in_;
};

}  // namespace

void write_raster(std::ostream& out, const BasinRaster& r) {
  Writer w(out);
  w.bytes(kMagic.data(), kMagic.size());
  w.u32(kRasterVersion);
  w.f64(r.bounds.u_min);
  w.f64(r.bounds.u_max);
  w.f64(r.bounds.v_min);
  w.f64(r.bounds.v_max);
  w.u32(static_cast<std::uint32_t>(r.resolution));
  w.f64(r.params.allee_threshold);
  w.f64(r.params.predator_growth);
  w.f64(r.params.predation);
  w.f64(r.params.alt_food);
  w.u64(r.config_hash);
  w.u32(static_cast<std::uint32_t>(kToolVersion.size()));
  w.bytes(kToolVersion.data(), kToolVersion.size());
  w.u32(static_cast<std::uint32_t>(r.attractors.size()));
  for (const auto& a : r.attractors) {
    w.u8(a.id);
    const bool cycle = a.label.tag == AttractorLabel::Tag::LimitCycle;
    w.u8(cycle ? kTagCycle : kTagEquilibrium);
    w.u8(cycle ? 0 : static_cast<std::uint8_t>(a.label.equilibrium));
    w.f64(a.location.x());
    w.f64(a.location.y());
  }
  w.bytes(reinterpret_cast<const char*>(r.labels.data()), r.labels.size());
  if (!out) throw RasterFormatError("failed to write raster");
}

BasinRaster read_raster(std::istream& in) {
  Reader rd(in);
  std::array<char, 8> magic{};
  rd.bytes(magic.data(), magic.size());
  if (magic != kMagic) throw RasterFormatError("not a basin raster (bad magic)");
  const std::uint32_t version = rd.u32();
  if (version != kRasterVersion) {
    throw RasterFormatError("unsupported raster version " + std::to_string(version));
  }
  BasinRaster r;
  r.bounds.u_min = rd.f64();
  r.bounds.u_max = rd.f64();
  r.bounds.v_min = rd.f64();
  r.bounds.v_max = rd.f64();
  const std::uint32_t res = rd.u32();
  if (res < 1 || res > static_cast<std::uint32_t>(kMaxResolution)) {
    throw RasterFormatError("invalid resolution " + std::to_string(res));
  }
  r.resolution = static_cast<int>(res);
  r.params.allee_threshold = rd.f64();
  r.params.predator_growth = rd.f64();
  r.params.predation = rd.f64();
  r.params.alt_food = rd.f64();
  r.config_hash = rd.u64();
  const std::uint32_t version_len = rd.u32();
  if (version_len > 1024) throw RasterFormatError("tool version string too long");
  std::string tool(version_len, '\0');
  rd.bytes(tool.data(), tool.size());
  const std::uint32_t count = rd.u32();
  if (count > 255) throw RasterFormatError("too many attractors");
  for (std::uint32_t k = 0; k < count; ++k) {
    BasinAttractor a;
    a.id = rd.u8();
    const std::uint8_t tag = rd.u8();
    const std::uint8_t kind = rd.u8();
    if (a.id == kUndecided) throw RasterFormatError("attractor id 0 is reserved");
    if (tag == kTagCycle) {
      a.label = AttractorLabel::limit_cycle();
    } else if (tag == kTagEquilibrium &&
               kind <= static_cast<std::uint8_t>(EquilibriumKind::InteriorDouble)) {
      a.label = AttractorLabel::at(static_cast<EquilibriumKind>(kind));
    } else {
      throw RasterFormatError("invalid attractor entry");
    }
    const double u = rd.f64();
    const double v = rd.f64();
    a.location = State(u, v);
    r.attractors.push_back(a);
  }
  r.labels.resize(static_cast<std::size_t>(res) * res);
  rd.bytes(reinterpret_cast<char*>(r.labels.data()), r.labels.size());
  for (std::uint8_t id : r.labels) {
    if (id != kUndecided && r.attractor(id) == nullptr) {
      throw RasterFormatError("label " + std::to_string(id) + " missing from attractor table");
    }
  }
  return r;
}

void write_raster(const std::filesystem::path& path, const BasinRaster& r) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RasterFormatError("cannot open " + path.string() + " for writing");
  write_raster(out, r);
}

BasinRaster read_raster(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RasterFormatError("cannot open " + path.string());
  return read_raster(in);
}

}  // namespace mht
