#include "critsense/runner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace critsense;

namespace {

RunConfig config(const std::string& text, const std::string& experiment) {
  return parse_config(Json::parse(text), experiment);
}

int column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns().size(); ++i)
    if (t.columns()[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST(Runner, QfiScanHitsClosedFormAtCriticality) {
  const auto out =
      run(config(R"({"preset":"grover","sizes":[10,12,14],"theta":{"min":0.9,"max":1.1,"points":21}})", "qfi-scan"));
  ASSERT_EQ(out.table.columns(), (std::vector<std::string>{"L", "theta", "qfi"}));
  ASSERT_EQ(out.table.size(), 63u);
  int hits = 0;
  for (std::size_t i = 0; i < out.table.size(); ++i) {
    const auto& r = out.table.at(i);
    if (std::abs(std::stod(r[1]) - 1.0) > 1e-12) continue;
    const double n = std::ldexp(1.0, std::stoi(r[0]));
    EXPECT_NEAR(std::stod(r[2]), (n - 1.0) / 4.0, 1e-9 * n);
    ++hits;
  }
  EXPECT_EQ(hits, 3);
}

TEST(Runner, ValidationErrors) {
  EXPECT_THROW(config(R"({"sizes":[]})", "scaling"), InvalidArgument);
  EXPECT_THROW(config(R"({"preset":"nope"})", "scaling"), InvalidArgument);
  EXPECT_THROW(config(R"({"preset":"grover","model":{"model":"grover","qubits":4}})", "scaling"), InvalidArgument);
  EXPECT_THROW(config(R"({"experiment":"adaptive"})", "scaling"), InvalidArgument);
  EXPECT_THROW(config(R"({"preset":"biclique-scaling","sizes":[6]})", "scaling"), InvalidArgument);
  EXPECT_THROW(config(R"({"epsilon":1.5})", "adiabatic"), InvalidArgument);
  EXPECT_THROW(config(R"({"bracket":[2,1]})", "scaling"), InvalidArgument);
  EXPECT_THROW(config(R"({"backend":"gpu"})", "dephasing"), InvalidArgument);
  EXPECT_THROW(config(R"({"sizes":"ten"})", "scaling"), InvalidArgument);
  EXPECT_THROW(config("[1,2]", "scaling"), InvalidArgument);
  EXPECT_THROW(config("{}", "fly"), InvalidArgument);
}

TEST(Runner, ResolvedConfigRoundTrips) {
  const auto c = config(R"({"preset":"pspin-first","sizes":[6,8],"seed":11,"gammas":[0,0.01]})", "dephasing");
  const auto j = resolved_config(c);
  EXPECT_EQ(resolved_config(parse_config(j, "dephasing")).dump(), j.dump());
  EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 11u);
}

TEST(Runner, InlineModel) {
  const auto out = run(config(R"({"model":{"model":"pspin","qubits":6,"p":3,"k":1,"lambda":1.0},
                                  "theta":{"min":1.0,"max":1.6,"points":7}})",
                              "gap-scan"));
  EXPECT_EQ(out.table.size(), 7u);
  EXPECT_TRUE(out.manifest.at("config").contains("model"));
}

TEST(Runner, ManifestEmbedsConfigAndCsvName) {
  const auto out = run(config(R"({"preset":"grover","sizes":[6,8,10,12,14]})", "scaling"));
  EXPECT_EQ(out.stem, "grover_scaling");
  EXPECT_EQ(out.manifest.at("csv"), "grover_scaling.csv");
  EXPECT_EQ(out.manifest.at("rows"), 5);
  EXPECT_EQ(out.manifest.at("config").at("experiment"), "scaling");
  const auto csv = out.table.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "L,theta_c,gap_c,qfi_c");
  EXPECT_FALSE(out.summary.empty());
}

TEST(Runner, ScalingIsDeterministic) {
  const char* text = R"({"preset":"pspin-first","sizes":[8,10,12,14,16],"threads":3})";
  const auto a = run(config(text, "scaling"));
  const auto b = run(config(text, "scaling"));
  EXPECT_EQ(a.table.str(), b.table.str());
  EXPECT_EQ(a.manifest.dump(), b.manifest.dump());
}

TEST(Runner, AdaptiveSeedControlsOutput) {
  const char* t1 = R"({"preset":"grover","seeds":3,"seed":5,"threads":2})";
  const char* t2 = R"({"preset":"grover","seeds":3,"seed":6,"threads":1})";
  const auto a = run(config(t1, "adaptive"));
  const auto b = run(config(t1, "adaptive"));
  const auto c = run(config(t2, "adaptive"));
  EXPECT_EQ(a.table.str(), b.table.str());
  EXPECT_NE(a.table.str(), c.table.str());
  EXPECT_GE(column(a.table, "cramer_rao"), 0);
}

TEST(Runner, PresetTableListsRequiredPresets) {
  const auto t = preset_table();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < t.size(); ++i) names.push_back(t.at(i)[0]);
  for (const char* want : {"grover", "pspin-first", "pspin-second", "biclique-scaling", "biclique-dynamics"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
}

TEST(Csv, FormatsAndQuotes) {
  CsvTable t({"a", "b", "c"});
  t.row() << 0.1 << "x,y" << std::string("q\"t");
  EXPECT_EQ(t.str(), "a,b,c\n0.10000000000000001,\"x,y\",\"q\"\"t\"\n");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  for (double x : {M_PI, 1e-300, -2.5e17, 6.02214076e23}) EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Csv, RowWidthEnforced) {
  CsvTable t({"a", "b"});
  t.row() << 1;
  EXPECT_THROW(t.row(), InvalidArgument);
}

TEST(Json, ModelRoundTrip) {
  for (const ModelSpec& s : {ModelSpec{Grover{7}}, ModelSpec{PSpin{9, 5, 2, 0.1}}, ModelSpec{Biclique{3, 2, 1.0, 4.0, 3.5}}})
    EXPECT_EQ(to_json(model_from_json(to_json(s))).dump(), to_json(s).dump());
  EXPECT_THROW(model_from_json(Json::parse(R"({"model":"ising"})")), InvalidArgument);
  EXPECT_THROW(model_from_json(Json::parse(R"({"model":"grover","qubits":"x"})")), InvalidArgument);
}
