// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Just enough of the zip container for the resource distribution format:
// read one named member, write an archive holding one member. Writing is
// deterministic (fixed timestamp, fixed compression settings) so repeated
// exports of identical content are identical archives.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <zlib.h>

namespace gazetteer {

class ZipError : public std::runtime_error {
 public:
  explicit ZipError(const std::string& msg) : std::runtime_error("zip: " + msg) {}
};

inline bool looks_like_zip(std::string_view bytes) {
  return bytes.size() >= 4 && bytes[0] == 'P' && bytes[1] == 'K' &&
         (bytes[2] == 3 || bytes[2] == 5) && (bytes[3] == bytes[2] + 1);
}

namespace zipdetail {

inline std::uint16_t rd16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    (static_cast<unsigned char>(b[at + 1]) << 8));
}

inline std::uint32_t rd32(std::string_view b, std::size_t at) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3])) << 24);
}

inline void wr16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

inline void wr32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

inline std::string deflate_raw(std::string_view in) {
  z_stream strm{};
  if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -15, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK)
    throw ZipError("deflate init failed");
  std::string out;
  out.resize(deflateBound(&strm, static_cast<uLong>(in.size())));
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  strm.avail_in = static_cast<uInt>(in.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&strm, Z_FINISH);
  const std::size_t produced = strm.total_out;
  deflateEnd(&strm);
  if (rc != Z_STREAM_END) throw ZipError("deflate failed");
  out.resize(produced);
  return out;
}

inline std::string inflate_raw(std::string_view in, std::size_t expected) {
  z_stream strm{};
  if (inflateInit2(&strm, -15) != Z_OK) throw ZipError("inflate init failed");
  std::string out;
  out.resize(expected);
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  strm.avail_in = static_cast<uInt>(in.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&strm, Z_FINISH);
  const std::size_t produced = strm.total_out;
  inflateEnd(&strm);
  if (rc != Z_STREAM_END || produced != expected)
    throw ZipError("inflate failed or size mismatch");
  return out;
}

}  // namespace zipdetail

struct ZipMember {
  std::string name;
  std::string data;
};

// Reads the first member of the archive (the resource format ships one).
inline ZipMember zip_read_first(std::string_view bytes) {
  using namespace zipdetail;
  if (bytes.size() < 22) throw ZipError("truncated archive");
  // End-of-central-directory record: scan backwards over a possible comment.
  std::size_t eocd = std::string_view::npos;
  const std::size_t floor =
      bytes.size() > 22 + 0xFFFF ? bytes.size() - 22 - 0xFFFF : 0;
  for (std::size_t i = bytes.size() - 22 + 1; i-- > floor;) {
    if (bytes[i] == 'P' && bytes[i + 1] == 'K' && bytes[i + 2] == 5 &&
        bytes[i + 3] == 6) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string_view::npos) throw ZipError("no end record");
  const std::uint16_t entries = rd16(bytes, eocd + 10);
  if (entries == 0) throw ZipError("empty archive");
  const std::uint32_t cd_off = rd32(bytes, eocd + 16);
  if (cd_off + 46 > bytes.size() || rd32(bytes, cd_off) != 0x02014b50)
    throw ZipError("bad central directory");
  const std::uint16_t method = rd16(bytes, cd_off + 10);
  const std::uint32_t crc = rd32(bytes, cd_off + 16);
  const std::uint32_t csize = rd32(bytes, cd_off + 20);
  const std::uint32_t usize = rd32(bytes, cd_off + 24);
  const std::uint16_t nlen = rd16(bytes, cd_off + 28);
  const std::uint32_t local = rd32(bytes, cd_off + 42);
  if (cd_off + 46 + nlen > bytes.size()) throw ZipError("bad entry name");
  ZipMember member;
  member.name.assign(bytes.substr(cd_off + 46, nlen));
  if (local + 30 > bytes.size() || rd32(bytes, local) != 0x04034b50)
    throw ZipError("bad local header");
  const std::uint16_t lnlen = rd16(bytes, local + 26);
  const std::uint16_t lxlen = rd16(bytes, local + 28);
  const std::size_t data_at = local + 30 + lnlen + lxlen;
  if (data_at + csize > bytes.size()) throw ZipError("truncated member data");
  const std::string_view raw = bytes.substr(data_at, csize);
  if (method == 0) {
    if (csize != usize) throw ZipError("stored member size mismatch");
    member.data.assign(raw);
  } else if (method == 8) {
    member.data = inflate_raw(raw, usize);
  } else {
    throw ZipError("unsupported compression method " + std::to_string(method));
  }
  const auto check = static_cast<std::uint32_t>(
      crc32(crc32(0L, Z_NULL, 0),
            reinterpret_cast<const Bytef*>(member.data.data()),
            static_cast<uInt>(member.data.size())));
  if (check != crc) throw ZipError("crc mismatch");
  return member;
}

inline std::string zip_write_single(std::string_view name, std::string_view data) {
  using namespace zipdetail;
  const std::string deflated = deflate_raw(data);
  const auto crc = static_cast<std::uint32_t>(
      crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(data.data()),
            static_cast<uInt>(data.size())));
  // 1980-01-01 00:00:00 in DOS date/time, for byte-stable archives.
  const std::uint16_t dos_time = 0;
  const std::uint16_t dos_date = 0x0021;

  std::string out;
  wr32(out, 0x04034b50);
  wr16(out, 20);
  wr16(out, 0);
  wr16(out, 8);
  wr16(out, dos_time);
  wr16(out, dos_date);
  wr32(out, crc);
  wr32(out, static_cast<std::uint32_t>(deflated.size()));
  wr32(out, static_cast<std::uint32_t>(data.size()));
  wr16(out, static_cast<std::uint16_t>(name.size()));
  wr16(out, 0);
  out += name;
  out += deflated;

  const std::uint32_t cd_off = static_cast<std::uint32_t>(out.size());
  wr32(out, 0x02014b50);
  wr16(out, 20);
  wr16(out, 20);
  wr16(out, 0);
  wr16(out, 8);
  wr16(out, dos_time);
  wr16(out, dos_date);
  wr32(out, crc);
  wr32(out, static_cast<std::uint32_t>(deflated.size()));
  wr32(out, static_cast<std::uint32_t>(data.size()));
  wr16(out, static_cast<std::uint16_t>(name.size()));
  wr16(out, 0);
  wr16(out, 0);
  wr16(out, 0);
  wr16(out, 0);
  wr32(out, 0);
  wr32(out, 0);
  out += name;
  const std::uint32_t cd_size = static_cast<std::uint32_t>(out.size()) - cd_off;

  wr32(out, 0x06054b50);
  wr16(out, 0);
  wr16(out, 0);
  wr16(out, 1);
  wr16(out, 1);
  wr32(out, cd_size);
  wr32(out, cd_off);
  wr16(out, 0);
  return out;
}

}  // namespace gazetteer
