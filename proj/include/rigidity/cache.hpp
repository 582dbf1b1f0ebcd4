#pragma once

// On-disk cache of tuple enumerations: cache/p1_<hash>.dat holds the
// general-position bases on P^1(A), cache/orbits_<hash>.dat the admissible
// orbit bases. Anything that fails to validate is rebuilt and overwritten.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "rigidity/pgl2_orbit.hpp"
#include "rigidity/proj_complex.hpp"

namespace rigidity {

inline constexpr std::uint32_t kCacheMagic = 0x43444752;  // "RGDC"
inline constexpr std::uint32_t kCacheVersion = 1;

enum class CacheKind : std::uint32_t { P1 = 1, Orbits = 2 };

inline std::filesystem::path resolve_cache_dir(const std::string& flag = {}) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("RIGIDITY_CACHE_DIR"); env && *env) return env;
  return "cache";
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, CacheKind kind,
                                        const Ring& ring) {
  std::ostringstream name;
  name << (kind == CacheKind::P1 ? "p1_" : "orbits_") << std::hex << std::setw(16)
       << std::setfill('0') << ring.descriptor_hash() << ".dat";
  return dir / name.str();
}

namespace detail {

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
bool get(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof v));
}

// Bases stored in the file, when it matches ring/kind and covers dmax.
inline std::optional<std::vector<TupleBasis>> read_cache(const std::filesystem::path& path,
                                                         CacheKind kind, const Ring& ring,
                                                         int dmax) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::uint32_t magic = 0, version = 0, k = 0, len = 0;
  std::uint64_t hash = 0;
  std::int32_t stored = 0;
  if (!get(in, magic) || magic != kCacheMagic || !get(in, version) || version != kCacheVersion ||
      !get(in, k) || k != static_cast<std::uint32_t>(kind) || !get(in, hash) ||
      hash != ring.descriptor_hash() || !get(in, len) || len > 4096)
    return std::nullopt;
  std::string desc(len, '\0');
  if (!in.read(desc.data(), len) || desc != ring.descriptor()) return std::nullopt;
  if (!get(in, stored) || stored < dmax) return std::nullopt;
  std::vector<TupleBasis> out;
  for (int d = 0; d <= dmax; ++d) {
    std::uint32_t arity = 0;
    std::uint64_t count = 0;
    if (!get(in, arity) || arity != static_cast<std::uint32_t>(d + 1) || !get(in, count) ||
        count > kBasisGuard)
      return std::nullopt;
    TupleBasis b;
    b.arity = arity;
    b.flat.resize(count * arity);
    if (!in.read(reinterpret_cast<char*>(b.flat.data()),
                 static_cast<std::streamsize>(b.flat.size() * sizeof(std::uint32_t))))
      return std::nullopt;
    out.push_back(std::move(b));
  }
  return out;
}

inline void write_cache(const std::filesystem::path& path, CacheKind kind, const Ring& ring,
                        const std::vector<TupleBasis>& bases) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // unwritable cache dir: run uncached
    const std::string desc = ring.descriptor();
    put(out, kCacheMagic);
    put(out, kCacheVersion);
    put(out, static_cast<std::uint32_t>(kind));
    put(out, ring.descriptor_hash());
    put(out, static_cast<std::uint32_t>(desc.size()));
    out.write(desc.data(), static_cast<std::streamsize>(desc.size()));
    put(out, static_cast<std::int32_t>(bases.size()) - 1);
    for (const auto& b : bases) {
      put(out, static_cast<std::uint32_t>(b.arity));
      put(out, static_cast<std::uint64_t>(b.size()));
      out.write(reinterpret_cast<const char*>(b.flat.data()),
                static_cast<std::streamsize>(b.flat.size() * sizeof(std::uint32_t)));
    }
    if (!out) return;
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace detail

struct CachedBases {
  std::vector<TupleBasis> bases;
  bool hit = false;
};

inline CachedBases cached_bases(const std::filesystem::path& dir, CacheKind kind, const RingPtr& ring,
                                int dmax, const std::function<std::vector<TupleBasis>()>& build) {
  const auto path = cache_file(dir, kind, *ring);
  if (auto got = detail::read_cache(path, kind, *ring, dmax)) return {std::move(*got), true};
  CachedBases c{build(), false};
  detail::write_cache(path, kind, *ring, c.bases);
  return c;
}

inline CachedBases cached_gp_bases(const std::filesystem::path& dir, const RingPtr& ring, int dmax) {
  return cached_bases(dir, CacheKind::P1, ring, dmax, [&] {
    return enumerate_colored_tuples(residue_colors(ProjectiveLine(ring).points()), dmax);
  });
}

inline CachedBases cached_orbit_bases(const std::filesystem::path& dir, const RingPtr& ring, int dmax) {
  return cached_bases(dir, CacheKind::Orbits, ring, dmax,
                      [&] { return enumerate_orbit_bases(ring, dmax); });
}

}  // namespace rigidity
