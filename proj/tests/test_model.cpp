#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "sfdraw/errors.hpp"
#include "sfdraw/model.hpp"

using namespace sfdraw;

namespace {

bool has_rule(const std::vector<Diagnostic>& ds, const std::string& rule, const std::string& variable = "") {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) {
    return d.rule == rule && (variable.empty() || d.variable == variable);
  });
}

}  // namespace

TEST(ParseModel, MinimalModel) {
  auto m = parse_model(R"({"variables":[{"name":"a","kind":"auxiliary","depends_on":[]}]})", ModelFormat::model_json);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.variable(0).name, "a");
  EXPECT_TRUE(m.dep_edges().empty());
}

TEST(ParseModel, StockWithInflow) {
  auto m = parse_model(R"({"variables":[
    {"name":"Population","kind":"stock","depends_on":[],"inflows":["births"]},
    {"name":"births","kind":"flow","depends_on":["Population"]}]})",
                       ModelFormat::model_json);
  ASSERT_EQ(m.dep_edges().size(), 1u);
  EXPECT_EQ(m.dep_edges()[0], (DepEdge{0, 1}));
  ASSERT_EQ(m.flow_links().size(), 1u);
  EXPECT_EQ(m.flow_links()[0], (FlowLink{1, 0, FlowDirection::into}));
}

TEST(ParseModel, EdgeListFormat) {
  auto m = parse_model("a b\nb c\n", ModelFormat::edge_list);
  ASSERT_EQ(m.size(), 3u);
  for (const auto& v : m.variables()) EXPECT_EQ(v.kind, VariableKind::auxiliary);
  EXPECT_EQ(m.dep_edges(), (std::vector<DepEdge>{{0, 1}, {1, 2}}));
}

TEST(ParseModel, EdgeListCommentsAndBlankLines) {
  auto m = parse_model("# header\n\na b   # trailing\n\n  b a\n", ModelFormat::edge_list);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.dep_edges().size(), 2u);
}

TEST(ParseModel, EdgeListRejectsWrongArity) {
  try {
    parse_model("a b\na b c\n", ModelFormat::edge_list);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "line 2, column 1");
  }
}

TEST(ParseModel, SyntaxErrorReportsPosition) {
  try {
    parse_model("{\"variables\": [\n  {\"name\": \"a\",, }]}", ModelFormat::model_json);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().rfind("line 2, column ", 0), 0u) << e.location();
  }
}

TEST(ParseModel, UnknownKindRejected) {
  try {
    parse_model(R"({"variables":[{"name":"a","kind":"constant","depends_on":[]}]})", ModelFormat::model_json);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "/variables/0/kind");
  }
}

TEST(ParseModel, UnknownFieldRejected) {
  EXPECT_THROW(parse_model(R"({"variables":[{"name":"a","kind":"auxiliary","units":"x"}]})", ModelFormat::model_json),
               ParseError);
  EXPECT_THROW(parse_model(R"({"variables":[],"extra":1})", ModelFormat::model_json), ParseError);
}

TEST(ParseModel, SelfReferenceDropped) {
  auto m = parse_model(R"({"variables":[{"name":"a","kind":"auxiliary","depends_on":["a"]}]})", ModelFormat::model_json);
  EXPECT_TRUE(m.dep_edges().empty());
}

TEST(Validate, UnresolvedIdentifier) {
  ModelGraph m({{"a", VariableKind::auxiliary, {"x"}, {}, {}}});
  auto ds = validate(m);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].rule, "unresolved-identifier");
  EXPECT_EQ(ds[0].message, "unresolved identifier x");
  EXPECT_EQ(ds[0].variable, "a");
}

TEST(Validate, DuplicateName) {
  ModelGraph m({{"a", VariableKind::auxiliary, {}, {}, {}}, {"a", VariableKind::auxiliary, {}, {}, {}}});
  EXPECT_TRUE(has_rule(validate(m), "duplicate-name", "a"));
}

TEST(Validate, FlowOverAttached) {
  ModelGraph m({{"s1", VariableKind::stock, {}, {"f"}, {}},
                {"s2", VariableKind::stock, {}, {"f"}, {}},
                {"s3", VariableKind::stock, {}, {}, {"f"}},
                {"f", VariableKind::flow, {}, {}, {}}});
  auto ds = validate(m);
  ASSERT_TRUE(has_rule(ds, "flow-over-attached", "f"));
  auto it = std::find_if(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.rule == "flow-over-attached"; });
  EXPECT_EQ(it->message, "flow over-attached");
}

TEST(Validate, FlowsOnlyOnStocks) {
  ModelGraph m({{"a", VariableKind::auxiliary, {}, {"f"}, {}}, {"f", VariableKind::flow, {}, {}, {}}});
  EXPECT_TRUE(has_rule(validate(m), "flows-on-non-stock", "a"));
}

TEST(Validate, AttachedVariableMustBeFlow) {
  ModelGraph m({{"s", VariableKind::stock, {}, {"a"}, {}}, {"a", VariableKind::auxiliary, {}, {}, {}}});
  EXPECT_TRUE(has_rule(validate(m), "not-a-flow", "s"));
}

TEST(Validate, ParseModelThrowsModelError) {
  try {
    parse_model(R"({"variables":[{"name":"a","kind":"auxiliary","depends_on":["ghost"]}]})", ModelFormat::model_json);
    FAIL();
  } catch (const ModelError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].rule, "unresolved-identifier");
  }
}

TEST(Validate, FixturesAreValid) {
  for (const auto& f : fixtures::all()) {
    SCOPED_TRACE(f.file);
    ModelGraph m(parse_declarations(fixtures::read(f.file), f.format));
    EXPECT_TRUE(validate(m).empty());
  }
}

TEST(Validate, World2HasOneHundredSymbols) {
  auto m = fixtures::load(fixtures::all()[0]);
  EXPECT_EQ(m.size(), 100u);
}

TEST(ModelGraphInvariants, EndpointsExistAndNoSelfLoops) {
  for (const auto& f : fixtures::all()) {
    auto m = fixtures::load(f);
    for (const auto& e : m.dep_edges()) {
      EXPECT_LT(e.source, m.size());
      EXPECT_LT(e.target, m.size());
      EXPECT_NE(e.source, e.target);
    }
    for (const auto& l : m.flow_links()) {
      EXPECT_LT(l.flow, m.size());
      EXPECT_LT(l.stock, m.size());
      EXPECT_EQ(m.variable(l.flow).kind, VariableKind::flow);
      EXPECT_EQ(m.variable(l.stock).kind, VariableKind::stock);
    }
  }
}

TEST(ModelGraphInvariants, DeclarationOrderPreserved) {
  auto m = parse_model(R"({"variables":[{"name":"z","kind":"auxiliary"},{"name":"a","kind":"auxiliary"}]})",
                       ModelFormat::model_json);
  EXPECT_EQ(m.variable(0).name, "z");
  EXPECT_EQ(m.variable(1).name, "a");
}

TEST(RoundTrip, SerializeThenParseOnFixtures) {
  for (const auto& f : fixtures::all()) {
    SCOPED_TRACE(f.file);
    auto m = fixtures::load(f);
    auto text = serialize_model(m);
    EXPECT_EQ(parse_model(text, ModelFormat::model_json), m);
    EXPECT_EQ(serialize_model(parse_model(text, ModelFormat::model_json)), text);
  }
}

TEST(RoundTrip, RandomModels) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 12;
    std::vector<VariableDecl> decls(n);
    for (std::size_t i = 0; i < n; ++i) {
      decls[i].name = "v" + std::to_string(i);
      decls[i].kind = static_cast<VariableKind>(rng() % 3);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && rng() % 4 == 0) decls[i].depends_on.push_back(decls[j].name);
    }
    std::set<std::size_t> used_in, used_out;
    for (std::size_t i = 0; i < n; ++i) {
      if (decls[i].kind != VariableKind::stock) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (decls[j].kind != VariableKind::flow) continue;
        if (rng() % 3 == 0 && used_in.insert(j).second) decls[i].inflows.push_back(decls[j].name);
        else if (rng() % 3 == 0 && used_out.insert(j).second) decls[i].outflows.push_back(decls[j].name);
      }
    }
    ModelGraph m(decls);
    ASSERT_TRUE(validate(m).empty());
    EXPECT_EQ(parse_model(serialize_model(m), ModelFormat::model_json), m);
  }
}

TEST(Parsing, Deterministic) {
  const auto text = fixtures::read("world2.json");
  auto a = parse_model(text, ModelFormat::model_json);
  auto b = parse_model(text, ModelFormat::model_json);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dep_edges(), b.dep_edges());
  EXPECT_EQ(a.flow_links(), b.flow_links());
}
