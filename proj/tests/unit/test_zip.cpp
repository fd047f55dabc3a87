// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "gazetteer/zip.hpp"

using namespace gazetteer;

namespace {

// Minimal stored (method 0) archive built by hand, independent of the writer.
std::string stored_archive(const std::string& name, const std::string& data) {
  const std::uint32_t crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
            static_cast<uInt>(data.size())));
  std::string out;
  using zipdetail::wr16;
  using zipdetail::wr32;
  wr32(out, 0x04034b50);
  wr16(out, 20);
  wr16(out, 0);
  wr16(out, 0);  // stored
  wr16(out, 0);
  wr16(out, 0);
  wr32(out, crc);
  wr32(out, static_cast<std::uint32_t>(data.size()));
  wr32(out, static_cast<std::uint32_t>(data.size()));
  wr16(out, static_cast<std::uint16_t>(name.size()));
  wr16(out, 0);
  out += name;
  out += data;
  const std::uint32_t cd_off = static_cast<std::uint32_t>(out.size());
  wr32(out, 0x02014b50);
  wr16(out, 20);
  wr16(out, 20);
  wr16(out, 0);
  wr16(out, 0);
  wr16(out, 0);
  wr16(out, 0);
  wr32(out, crc);
  wr32(out, static_cast<std::uint32_t>(data.size()));
  wr32(out, static_cast<std::uint32_t>(data.size()));
  wr16(out, static_cast<std::uint16_t>(name.size()));
  wr16(out, 0);
  wr16(out, 0);
  wr16(out, 0);
  wr16(out, 0);
  wr32(out, 0);
  wr32(out, 0);  // local header offset
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

}  // namespace

TEST_CASE("zip round-trips arbitrary bytes") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 5000);
  for (int trial = 0; trial < 50; ++trial) {
    std::string data;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) data += static_cast<char>(byte(rng));
    const std::string archive = zip_write_single("names.txt", data);
    REQUIRE(looks_like_zip(archive));
    const ZipMember m = zip_read_first(archive);
    REQUIRE(m.name == "names.txt");
    REQUIRE(m.data == data);
  }
}

TEST_CASE("zip writer is deterministic") {
  const std::string a = zip_write_single("names.txt", "1\tP\tu\tTony+Blair\n");
  const std::string b = zip_write_single("names.txt", "1\tP\tu\tTony+Blair\n");
  CHECK(a == b);
}

TEST_CASE("zip signature detection") {
  CHECK(looks_like_zip(zip_write_single("x", "y")));
  CHECK_FALSE(looks_like_zip(""));
  CHECK_FALSE(looks_like_zip("P"));
  CHECK_FALSE(looks_like_zip("1\tP\tu\tTony+Blair\n"));
  CHECK_FALSE(looks_like_zip("PK no header"));
}

TEST_CASE("zip reader accepts a stored-method archive") {
  const std::string data = "1\tP\tu\tAngela+Merkel\n";
  const ZipMember m = zip_read_first(stored_archive("names.txt", data));
  CHECK(m.name == "names.txt");
  CHECK(m.data == data);
}

TEST_CASE("zip reader rejects damaged archives") {
  const std::string data(2000, 'a');
  std::string archive = zip_write_single("names.txt", data);

  SECTION("flipped payload byte fails the checksum") {
    std::string bad = archive;
    bad[40] = static_cast<char>(bad[40] ^ 0x5a);
    CHECK_THROWS_AS(zip_read_first(bad), ZipError);
  }
  SECTION("truncation") {
    CHECK_THROWS_AS(zip_read_first(archive.substr(0, 10)), ZipError);
    CHECK_THROWS_AS(zip_read_first(archive.substr(0, archive.size() / 2)),
                    ZipError);
  }
  SECTION("empty archive has no members") {
    std::string empty;
    zipdetail::wr32(empty, 0x06054b50);
    for (int i = 0; i < 4; ++i) zipdetail::wr16(empty, 0);
    zipdetail::wr32(empty, 0);
    zipdetail::wr32(empty, 0);
    zipdetail::wr16(empty, 0);
    CHECK_THROWS_AS(zip_read_first(empty), ZipError);
  }
}
