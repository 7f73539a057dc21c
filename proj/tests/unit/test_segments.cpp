// tests/unit/test_segments.cpp

// Copyright 2026  The repstat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <doctest.h>

#include "repstat/error.hpp"
#include "repstat/segments.hpp"

using namespace repstat;

TEST_CASE("TIMIT .phn line converts samples to seconds") {
  std::istringstream in("0 3050 h#\n3050 4559 sh\n");
  PhnSource src;
  src.sample_rate = 16000;
  src.utterance_id = "sa1";
  src.speaker = "fcjf0";
  src.dataset = "timit";
  src.gender = "f";
  const auto t = read_segments_phn(in, src);
  REQUIRE(t.size() == 2);
  CHECK(t[0].start == 0.0);
  CHECK(t[0].end == 0.190625);
  CHECK(t[0].phone == "h#");
  CHECK(t[1].speaker == "fcjf0");
  CHECK(t[1].utterance_id == "sa1");
}

TEST_CASE("CSV row maps to a typed row") {
  std::istringstream in(
      "utterance,start,end,phone,speaker,dataset,gender\n"
      "u1,0.10,0.25,iy,spk3,timit,f\n");
  const auto t = read_segments_csv(in);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == SegmentRow{"u1", 0.10, 0.25, "iy", "spk3", "timit", "f"});
}

TEST_CASE("start >= end is rejected") {
  std::istringstream in("100 50 ae\n");
  try {
    read_segments_phn(in, {});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_interval);
  }
}

TEST_CASE("malformed lines report their line number") {
  std::istringstream in(
      "utterance,start,end,phone,speaker,dataset,gender\n"
      "u1,0.1,0.2,iy,s,d,f\n"
      "u1,zero,0.3,iy,s,d,f\n");
  try {
    read_segments_csv(in);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_line);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream phn("0 10 aa\n10 x aa\n");
  CHECK_THROWS_AS(read_segments_phn(phn, {}), Error);
  std::istringstream wrong_header("a,b,c\n");
  CHECK_THROWS_AS(read_segments_csv(wrong_header), Error);
}

TEST_CASE("parsing preserves order and is idempotent through CSV") {
  std::istringstream in(
      "utterance,start,end,phone,speaker,dataset,gender\n"
      "u2,0.5,0.6,aa,s1,l2arctic,m\n"
      "u1,0.1,0.2,zz,s1,l2arctic,m\n"
      "u1,0.0,0.1,AH0,s1,l2arctic,m\n");
  const auto once = read_segments_csv(in);
  std::ostringstream out;
  write_segments_csv(once, out);
  std::istringstream again(out.str());
  const auto twice = read_segments_csv(again);
  CHECK(once == twice);
  CHECK(once[0].utterance_id == "u2");
  CHECK(once[2].phone == "AH0");
}

TEST_CASE("phone inventory flags unknown symbols but keeps them") {
  CHECK(is_arpabet("iy"));
  CHECK(is_arpabet("AH0"));
  CHECK(is_arpabet("h#"));
  CHECK(is_arpabet("ax-h"));
  CHECK_FALSE(is_arpabet("zz"));
  CHECK(normalize_phone(" ER1 ") == "er");
  SegmentTable t = {{"u", 0, 1, "aa", "", "", ""}, {"u", 1, 2, "xyz", "", "", ""}};
  CHECK(unknown_phone_rows(t) == std::vector<std::size_t>{1});
}
