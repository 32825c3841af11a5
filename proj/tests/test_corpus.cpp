#include <gtest/gtest.h>

#include <set>

#include "bialg/corpus.hpp"
#include "helpers.hpp"

using namespace bialg;
using testing_util::alg;

namespace {

const char* kSmall = R"(
algebra G param b   # toy
  bracket 2 4 -> 1 1
  bracket 1 4 -> (1+b) 1 b 2
  constraint b != 0
end
algebra Z
end
bialgebra G G.i
  bracket 1 2 -> 1 3
end
rmatrix G G.i
  free c
  r: (c) 1 wedge 2 ; -1/2 3 tensor 3
end
)";

const Corpus& shipped() {
  static Corpus c = Corpus::load_default();
  return c;
}

}  // namespace

TEST(CorpusParse, BracketLineSetsAntisymmetricConstant) {
  auto c = Corpus::load_text("algebra T\n  bracket 2 4 -> 1 1\nend\n");
  auto f = c.structure("T");
  EXPECT_EQ(f(1, 3, 0), Rational(1));
  EXPECT_EQ(f(3, 1, 0), Rational(-1));
  EXPECT_EQ(f(0, 1, 2), Rational(0));
}

TEST(CorpusParse, EmptyBlockIsAbelian) {
  auto c = Corpus::load_text(kSmall);
  EXPECT_TRUE(c.structure("Z").is_zero());
}

TEST(CorpusParse, ParameterisedCoefficient) {
  auto c = Corpus::load_text(kSmall);
  auto f = c.structure("G", {{"b", Rational(-1, 2)}});
  EXPECT_EQ(f(0, 3, 0), Rational(1, 2));
  EXPECT_EQ(f(0, 3, 1), Rational(-1, 2));
}

TEST(CorpusParse, ConstraintViolationIsRejected) {
  auto c = Corpus::load_text(kSmall);
  EXPECT_THROW(c.check_binding({"G"}, {{"b", Rational(0)}}), InputError);
  EXPECT_NO_THROW(c.check_binding({"G"}, {{"b", Rational(2)}}));
  // the dual label inherits the parameters of its algebra
  EXPECT_THROW(c.check_binding({"G.i"}, {{"b", Rational(0)}}), InputError);
  for (auto& b : c.grid({"G"})) EXPECT_NE(b.at("b"), Rational(0));
}

TEST(CorpusParse, RTermsWedgeAndTensor) {
  auto c = Corpus::load_text(kSmall);
  auto* e = c.of_kind(EntryKind::RMatrix).at(0);
  auto r = r_matrix_of(*e->data.r, {{"c", Rational(3)}});
  EXPECT_EQ(r(0, 1), Rational(3));
  EXPECT_EQ(r(1, 0), Rational(-3));
  EXPECT_EQ(r(2, 2), Rational(-1, 2));
}

TEST(CorpusParse, ErrorsCarryLineAndColumn) {
  try {
    parse_corpus("algebra T\n  bracket 2 x -> 1 1\nend\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2);
    EXPECT_GT(e.column, 1);
  }
  EXPECT_THROW(parse_corpus("algebra T\n  bracket 1 2 -> 1 1\n"), ParseError);
  EXPECT_THROW(parse_corpus("widget T\nend\n"), ParseError);
  EXPECT_THROW(parse_corpus("poisson A B method=magic\nend\n"), ParseError);
}

TEST(CorpusParse, UnknownSymbolFailsValidation) {
  auto c = Corpus::load_text("algebra T\n  bracket 1 2 -> q 3\nend\n");
  EXPECT_THROW(c.validate(), ParseError);
}

TEST(CorpusParse, DuplicateDefinitionRejected) {
  EXPECT_THROW(Corpus::load_text("algebra T\nend\nalgebra T\nend\n"), ParseError);
}

TEST(CorpusSerialize, RoundTripIsStable) {
  auto es = parse_corpus(kSmall);
  std::string once = serialize(es);
  std::string twice = serialize(parse_corpus(once));
  EXPECT_EQ(once, twice);
}

TEST(CorpusSerialize, ShippedCorpusRoundTrips) {
  std::string once = serialize(shipped().entries());
  auto again = parse_corpus(once);
  ASSERT_EQ(again.size(), shipped().entries().size());
  EXPECT_EQ(serialize(again), once);
}

TEST(CorpusSerialize, JsonCarriesKindNamesAndAnchor) {
  auto& c = shipped();
  auto j = to_json(c.definition("A_4_9_b"));
  EXPECT_EQ(j["kind"], "algebra");
  EXPECT_EQ(j["names"][0], "A_4_9_b");
  EXPECT_EQ(j["anchor"], "Table 1 row 13");
}

TEST(CorpusShipped, Validates) { EXPECT_NO_THROW(shipped().validate()); }

TEST(CorpusShipped, Counts) {
  auto& c = shipped();
  EXPECT_EQ(c.from_table(EntryKind::Algebra, 1).size(), 20u);
  EXPECT_EQ(c.from_table(EntryKind::Bialgebra, 2).size(), 138u);
  EXPECT_EQ(c.from_table(EntryKind::RMatrix, 3).size(), 23u);
  EXPECT_EQ(c.from_table(EntryKind::RMatrix, 4).size(), 52u);
  EXPECT_EQ(c.from_table(EntryKind::Frame, 5).size(), 47u);
  EXPECT_EQ(c.from_table(EntryKind::Poisson, 6).size(), 105u);
  EXPECT_EQ(c.from_table(EntryKind::Poisson, 7).size(), 84u);
  EXPECT_EQ(c.of_kind(EntryKind::Fixture).size(), 2u);
}

TEST(CorpusShipped, A49AtMinusHalfEqualsNamedRow) {
  auto& c = shipped();
  auto f = structure_of(c.definition("A_4_9_b").data.brackets, {{"b", Rational(-1, 2)}});
  auto g = c.structure("A_4_9_-1/2");
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j)
      for (size_t k = 0; k < 4; ++k) EXPECT_EQ(f(i, j, k), g(i, j, k));
}

TEST(CorpusShipped, A41HasTheNilpotentBrackets) {
  auto f = shipped().structure("A_4_1");
  auto want = alg({{2, 4, 1, 1}, {3, 4, 2, 1}});
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j)
      for (size_t k = 0; k < 4; ++k) EXPECT_EQ(f(i, j, k), want(i, j, k));
}

TEST(CorpusShipped, ZeroDualParameterIsRejected) {
  auto& c = shipped();
  EXPECT_THROW(c.check_binding({"A_4_3", "A_4_3.iii"}, {{"q", Rational(0)}}), InputError);
  EXPECT_NO_THROW(c.check_binding({"A_4_3", "A_4_3.iii"}, {{"q", Rational(2)}}));
}

// a dual label names one structure wherever it appears
TEST(CorpusShipped, DualLabelsAreConsistent) {
  auto& c = shipped();
  std::map<std::string, const CorpusEntry*> first;
  size_t compared = 0;
  for (auto* e : c.of_kind(EntryKind::Bialgebra)) {
    auto [it, fresh] = first.emplace(e->names[1], e);
    if (fresh) continue;
    auto params = c.params_of({e->names[0], e->names[1]});
    if (!params.empty()) continue;
    auto a = structure_of(e->data.brackets, {});
    auto b = structure_of(it->second->data.brackets, {});
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j)
        for (size_t k = 0; k < 4; ++k) EXPECT_EQ(a(i, j, k), b(i, j, k)) << e->key();
    ++compared;
  }
  EXPECT_GT(compared, 20u);
}

TEST(CorpusShipped, CorrectedRowsKeepPrintedValue) {
  auto& c = shipped();
  size_t n = 0;
  for (auto& e : c.entries()) {
    bool has_printed = !e.printed.brackets.empty() || e.printed.r || e.printed.dual_r || !e.printed.pb.empty() ||
                       !e.printed.left.empty() || !e.printed.right.empty();
    if (has_printed) {
      EXPECT_TRUE(e.flagged()) << e.key();
      ++n;
    }
  }
  EXPECT_GE(n, 8u);
}

TEST(CorpusShipped, PoissonLinesReserializeCanonically) {
  auto& c = shipped();
  for (auto* e : c.of_kind(EntryKind::Poisson))
    for (auto& l : e->data.pb) {
      auto again = parse_expr(to_text(l.value));
      EXPECT_EQ(to_text(again), to_text(l.value)) << e->key();
    }
}
