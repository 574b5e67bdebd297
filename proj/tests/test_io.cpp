#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qfid/errors.hpp"
#include "qfid/io.hpp"

using namespace qfid;

TEST(Json, RoundTrip) {
  const CMatrix m{{1.0, cplx(0.5, -0.25)}, {cplx(0.5, 0.25), 2.0}};
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
}

TEST(Json, ImaginaryPartOptional) {
  const CMatrix m = matrix_from_json(json::parse(R"({"dim":2,"re":[[1,0],[0,0]]})"));
  EXPECT_EQ(m(0, 0), cplx(1.0));
  EXPECT_EQ(m(1, 0), cplx(0.0));
}

TEST(Json, MalformedInputs) {
  for (const char* text : {R"([1,2])", R"({"re":[[1]]})", R"({"dim":0,"re":[]})", R"({"dim":2,"re":[[1,0]]})",
                           R"({"dim":2,"re":[[1,0],[0]]})", R"({"dim":1,"re":[["x"]]})", R"({"dim":1})"})
    EXPECT_THROW(matrix_from_json(json::parse(text)), ParseError) << text;
  EXPECT_THROW(hermitian_from_json(json::parse(R"({"dim":2,"re":[[1,1],[0,1]]})")), ParseError);
}

TEST(Files, ReadDensityErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "qfid_io_test";
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, const char* text) {
    std::ofstream(dir / name) << text;
    return dir / name;
  };
  EXPECT_NO_THROW(read_density(write("ok.json", R"({"dim":2,"re":[[0.5,0],[0,0.5]]})")));
  EXPECT_THROW(read_density(write("neg.json", R"({"dim":2,"re":[[1.5,0],[0,-0.5]]})")), InvalidState);
  EXPECT_THROW(read_density(write("bad.json", "{not json")), ParseError);
  EXPECT_THROW(read_density(dir / "missing.json"), ParseError);
  try {
    read_density(dir / "neg.json");
  } catch (const InvalidState& e) {
    EXPECT_NE(std::string(e.what()).find("neg.json"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(Format, NineSignificantDigits) {
  EXPECT_EQ(format_sig(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_sig(3.6886694421607724), "3.68866944");
  EXPECT_EQ(format_sig(0.0), "0");
}

TEST(Json, FidelityReportFields) {
  const json j = to_json(FidelityReport{0.7, 0.5, 0.0, 0.7});
  EXPECT_EQ(j.at("holevo").get<double>(), 0.5);
  EXPECT_TRUE(j.contains("trace_distance"));
}
