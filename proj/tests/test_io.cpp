#include "hhl/io.hpp"

#include "reference_complexes.hpp"

#include <gtest/gtest.h>

using hhl::LatticeMapInput;
using hhl::exact::int_vector;
namespace io = hhl::io;

namespace {

std::string fixture(const std::string& name) { return std::string(HHL_SOURCE_DIR) + "/fixtures/" + name; }
std::string golden(const std::string& name) { return io::read_file(std::string(HHL_SOURCE_DIR) + "/tests/golden/" + name); }

io::ResolvedJob load(const std::string& name) { return io::resolve(io::parse_input(fixture(name))); }

hhl::ErrorKind error_kind_of(const std::string& text) {
  try {
    io::resolve(io::parse_input_text(text));
  } catch (const hhl::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return hhl::ErrorKind::Unsupported;
}

std::string error_message_of(const std::string& text) {
  try {
    io::resolve(io::parse_input_text(text));
  } catch (const hhl::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, ParsesCuspidalFixture) {
  const auto job = io::parse_input(fixture("cuspidal.json"));
  ASSERT_TRUE(job.psi);
  EXPECT_EQ(*job.psi, LatticeMapInput::from_rows({int_vector({3}), int_vector({-2})}));
  EXPECT_EQ(job.window, 6);
  EXPECT_FALSE(job.gs);
}

TEST(Io, RankDeficientInputIsRejected) {
  try {
    load("rank_deficient.json");
    FAIL();
  } catch (const hhl::Error& e) {
    EXPECT_EQ(e.kind(), hhl::ErrorKind::CokernelNotFinite);
    EXPECT_STREQ(e.what(), "cokernel not finite");
  }
}

TEST(Io, GsBlockIsConverted) {
  const auto r = load("p1_point_gs.json");
  EXPECT_EQ(r.input, LatticeMapInput::from_rows({int_vector({1}), int_vector({-1})}));
  EXPECT_EQ(r.fan.maximal_cones, (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  EXPECT_EQ(r.group.characters().free_rank(), 1u);
}

TEST(Io, ConvertedJobReproducesTheGroup) {
  const auto r = load("p1_point_gs.json");
  const auto job = io::job_from_resolved(r);
  const auto again = io::resolve(io::parse_input_text(io::job_to_json(job).dump()));
  EXPECT_EQ(again.input, r.input);
  EXPECT_EQ(again.fan.maximal_cones, r.fan.maximal_cones);
  const auto strata = hhl::enumerate_strata(r.input);
  EXPECT_EQ(hhl::thomsen_bondal_collection(strata, again.group).size(), hhl::thomsen_bondal_collection(strata, r.group).size());
}

TEST(Io, Diagnostics) {
  EXPECT_EQ(error_kind_of("{\"n\": 2, \"k\": 1, \"psi\": [[1], [2, 3]]}"), hhl::ErrorKind::Parse);
  EXPECT_EQ(error_message_of("{\"n\": 2, \"k\": 1, \"psi\": [[1], [2, 3]]}"), "psi[1]: expected 1 entries, found 2");
  EXPECT_EQ(error_message_of("{\"n\": 2, \"k\": 1, \"psi\": [[1], [\"x\"]]}"), "psi[1][0]: expected an integer");
  EXPECT_EQ(error_message_of("{\"n\": 1, \"k\": 1}"), "input: exactly one of \"psi\" and \"gs\" is required");
  EXPECT_EQ(error_message_of("{\"n\": 1, \"k\": 1, \"psi\": [[1]], \"colour\": 1}"), "colour: unknown field");
  EXPECT_EQ(error_message_of("{\"n\": 2, \"k\": 1, \"psi\": [[1], [-1]], \"fan\": [[0]]}"), "fan[0][0]: indices are 1-based");
  const std::string m = error_message_of("{\n  \"n\": 2,\n  \"k\": 1\n  \"psi\": []\n}");
  EXPECT_NE(m.find("line 4"), std::string::npos) << m;
}

TEST(Io, FanIndexOutOfRange) {
  EXPECT_EQ(error_kind_of("{\"n\": 2, \"k\": 1, \"psi\": [[1], [-1]], \"fan\": [[3]]}"), hhl::ErrorKind::IndexOutOfRange);
}

TEST(Io, GroupDoesNotDescend) {
  EXPECT_EQ(error_kind_of("{\"n\": 2, \"k\": 1, \"psi\": [[1], [-1]], \"group\": {\"free_rank\": 1, \"map\": [[1, 0]]}}"),
            hhl::ErrorKind::InvalidInput);
}

TEST(Io, BigIntegersAsStrings) {
  const auto job = io::parse_input_text("{\"n\": 2, \"k\": 1, \"psi\": [[\"123456789012345678901234567890\"], [-1]]}");
  EXPECT_EQ(job.psi->psi[0][0], hhl::exact::Integer("123456789012345678901234567890"));
  EXPECT_EQ(io::job_to_json(job)["psi"][0][0], "123456789012345678901234567890");
}

TEST(Io, JobRoundTrip) {
  for (const char* name : {"cuspidal.json", "torsion.json", "p1_point_gs.json", "identity.json", "simplex3.json"}) {
    const auto job = io::parse_input(fixture(name));
    EXPECT_EQ(io::parse_input_text(io::job_to_json(job).dump()), job) << name;
  }
  io::JobInput job = io::parse_input(fixture("torsion.json"));
  job.fan = std::vector<std::vector<std::size_t>>{{0}, {1}};
  job.group = io::GroupChoice{io::GroupChoice::Kind::Explicit, 0, int_vector({3}), hhl::exact::IntMatrix{{1, 2}}};
  job.integral = true;
  EXPECT_EQ(io::parse_input_text(io::job_to_json(job).dump(2)), job);
}

TEST(Io, ComplexDocumentRoundTrip) {
  for (const char* name : {"cuspidal.json", "torsion.json", "identity.json", "simplex3.json"}) {
    const auto r = load(name);
    const auto s = hhl::enumerate_strata(r.input);
    const auto c = hhl::build_affine_complex(s);
    const auto doc = io::make_document(c, r.group);
    const std::string text = io::document_to_json(doc, &s).dump();
    const auto back = io::document_from_json(io::json::parse(text));
    EXPECT_EQ(back, doc) << name;
    EXPECT_EQ(back.differentials, hhl::chain_of(c)) << name;
    EXPECT_EQ(io::document_to_json(back, &s).dump(), text) << name;
  }
}

TEST(Io, DocumentContents) {
  const auto r = load("torsion.json");
  const auto s = hhl::enumerate_strata(r.input);
  const auto doc = io::make_document(hhl::build_affine_complex(s), r.group);
  EXPECT_EQ(doc.census, (std::vector<std::size_t>{3, 6, 3}));
  EXPECT_EQ(doc.free_rank, 0u);
  EXPECT_EQ(doc.torsion, int_vector({3}));
  EXPECT_EQ(doc.schema, "hhl-complex/1");
  EXPECT_EQ(doc.input_hash.rfind("fnv1a64:", 0), 0u);
  EXPECT_EQ(doc.input_hash.size(), 8u + 16u);
  const auto j = io::document_to_json(doc, &s);
  const auto& entry = j["differentials"][0]["entries"][0];
  EXPECT_TRUE(entry.contains("row") && entry.contains("col") && entry.contains("terms"));
  EXPECT_TRUE(entry["terms"][0].contains("sign") && entry["terms"][0].contains("exps"));
}

TEST(Io, InputHashIsStableAndSensitive) {
  const auto a = LatticeMapInput::from_rows({int_vector({3}), int_vector({-2})});
  const auto b = LatticeMapInput::from_rows({int_vector({-2}), int_vector({3})});
  EXPECT_EQ(io::input_hash(a), io::input_hash(a));
  EXPECT_NE(io::input_hash(a), io::input_hash(b));
}

TEST(Io, M2Golden) {
  for (const char* name : {"cuspidal", "torsion", "identity"}) {
    const auto r = load(std::string(name) + ".json");
    const auto doc = io::make_document(hhl::build_affine_complex(hhl::enumerate_strata(r.input)), r.group);
    EXPECT_EQ(io::export_m2(doc), golden(std::string(name) + ".m2")) << name;
  }
}

TEST(Io, M2Shapes) {
  const auto cusp = io::export_m2(io::make_document(hhl::build_affine_complex(hhl::enumerate_strata(load("cuspidal.json").input)),
                                                    load("cuspidal.json").group));
  EXPECT_NE(cusp.find("R = QQ[x_1..x_2];"), std::string::npos);
  EXPECT_NE(cusp.find("d1 = map(R^4, R^4, "), std::string::npos);
  const auto tor = io::export_m2(
      io::make_document(hhl::build_affine_complex(hhl::enumerate_strata(load("torsion.json").input)), load("torsion.json").group));
  EXPECT_NE(tor.find("d1 = map(R^3, R^6, "), std::string::npos);
  EXPECT_NE(tor.find("d2 = map(R^6, R^3, "), std::string::npos);
  EXPECT_NE(tor.find("assert(d1 * d2 == 0);"), std::string::npos);
  const auto id = io::export_m2(
      io::make_document(hhl::build_affine_complex(hhl::enumerate_strata(load("identity.json").input)), load("identity.json").group));
  const bool plus = id.find("{{1 - x_1}}") != std::string::npos, minus = id.find("{{-1 + x_1}}") != std::string::npos;
  EXPECT_TRUE(plus || minus) << id;
}

TEST(Io, SvgMarks) {
  auto count = [](const std::string& s, const std::string& what) {
    std::size_t c = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++c;
    return c;
  };
  const auto cusp = io::export_svg(hhl::enumerate_strata(load("cuspidal.json").input));
  EXPECT_EQ(count(cusp, "<circle"), 4u);
  for (const char* label : {">0<", ">1/3<", ">1/2<", ">2/3<"}) EXPECT_NE(cusp.find(label), std::string::npos) << label;
  const auto tor = io::export_svg(hhl::enumerate_strata(load("torsion.json").input));
  EXPECT_EQ(count(tor, "<line"), 4u);
  EXPECT_EQ(count(tor, "<circle"), 4u);
  EXPECT_EQ(tor, golden("torsion.svg"));
  const auto id = io::export_svg(hhl::enumerate_strata(load("identity.json").input));
  EXPECT_EQ(count(id, "<circle"), 1u);
  EXPECT_NE(id.find(">0<"), std::string::npos);
}

TEST(Io, SvgRejectsHighRank) {
  try {
    io::export_svg(hhl::enumerate_strata(load("simplex3.json").input));
    FAIL();
  } catch (const hhl::Error& e) {
    EXPECT_EQ(e.kind(), hhl::ErrorKind::Unsupported);
    EXPECT_STREQ(e.what(), "svg supports k \xe2\x89\xa4 2");
  }
}

TEST(Io, ReportJson) {
  const auto r = load("cuspidal.json");
  const auto report = hhl::verify_resolution(r.input, {6, true, false});
  const auto j = io::report_to_json(report);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["entries"].size(), 13u);
  EXPECT_FALSE(j["windowed"].get<bool>());
  EXPECT_EQ(io::report_to_json(hhl::verify_resolution(r.input, {6, true, false})).dump(), j.dump());
}
