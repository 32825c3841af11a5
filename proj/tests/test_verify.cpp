#include <gtest/gtest.h>

#include "bialg/verify.hpp"
#include "helpers.hpp"

using namespace bialg;

namespace {

const Corpus& shipped() {
  static Corpus c = Corpus::load_default();
  return c;
}

CorpusEntry entry(bool flagged) {
  CorpusEntry e;
  if (flagged) e.flags.push_back("test");
  return e;
}

RowStatus settled(bool flagged, bool ok, std::optional<bool> printed_ok) {
  RowResult r;
  verify_detail::settle(r, entry(flagged), ok, printed_ok);
  return r.status;
}

// A_4_1 with an abelian dual; Poisson bracket of the pair is zero
const char* kToy = R"(
algebra N   # Table 1 row 1
  bracket 2 4 -> 1 1
  bracket 3 4 -> 1 2
end
algebra Bad   # Table 1 row 2
  bracket 1 2 -> 1 3
  bracket 1 3 -> 1 1
end
bialgebra N N.z   # Table 2 row 1
end
poisson N N.z method=pi   # Table 7 row 1
end
poisson N N.z method=sklyanin   # Table 6 row 1
  pb 1 2 = x1
end
)";

}  // namespace

TEST(Settle, UnflaggedRows) {
  EXPECT_EQ(settled(false, true, std::nullopt), RowStatus::Pass);
  EXPECT_EQ(settled(false, false, std::nullopt), RowStatus::Fail);
}

TEST(Settle, FlaggedWithPrintedValue) {
  EXPECT_EQ(settled(true, true, false), RowStatus::Flagged);
  // the flag must describe a real discrepancy
  EXPECT_EQ(settled(true, true, true), RowStatus::Fail);
  EXPECT_EQ(settled(true, false, false), RowStatus::Fail);
  EXPECT_EQ(settled(true, false, true), RowStatus::Fail);
}

TEST(Settle, FlaggedWithoutPrintedValueStaysFlagged) {
  EXPECT_EQ(settled(true, true, std::nullopt), RowStatus::Flagged);
  EXPECT_EQ(settled(true, false, std::nullopt), RowStatus::Flagged);
}

TEST(VerifyToy, AlgebraRows) {
  auto c = Corpus::load_text(kToy);
  auto rep = verify_table(c, 1);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_EQ(rep.rows[0].status, RowStatus::Pass);
  EXPECT_EQ(rep.rows[1].status, RowStatus::Fail);
  ASSERT_FALSE(rep.rows[1].details.empty());
  EXPECT_EQ(rep.rows[1].details[0].rfind("Jacobi fails", 0), 0u);
}

TEST(VerifyToy, PoissonRowsCompareAgainstDerivedBracket) {
  auto c = Corpus::load_text(kToy);
  auto t7 = verify_table(c, 7);
  ASSERT_EQ(t7.rows.size(), 1u);
  EXPECT_EQ(t7.rows[0].status, RowStatus::Pass);
  auto t6 = verify_table(c, 6);
  ASSERT_EQ(t6.rows.size(), 1u);
  EXPECT_EQ(t6.rows[0].status, RowStatus::Fail);
  EXPECT_FALSE(t6.rows[0].data_match);
}

TEST(VerifyToy, EmptyCorpusIsVacuous) {
  Corpus c = Corpus::load_text("");
  for (int t = 1; t <= 9; ++t) {
    auto rep = verify_table(c, t);
    EXPECT_TRUE(rep.rows.empty()) << t;
    EXPECT_TRUE(rep.ok());
  }
  EXPECT_THROW(verify_table(c, 10), InputError);
}

TEST(VerifyShipped, ParallelRunAgreesWithSerial) {
  VerifyOptions one, four;
  four.jobs = 4;
  auto a = verify_table(shipped(), 7, one);
  auto b = verify_table(shipped(), 7, four);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].key, b.rows[i].key);
    EXPECT_EQ(a.rows[i].status, b.rows[i].status);
    EXPECT_EQ(a.rows[i].details, b.rows[i].details);
  }
}

TEST(VerifyShipped, ExplicitBindingReplacesGrid) {
  VerifyOptions opt;
  opt.binding = ParamBinding{{"b", Rational(2)}};
  auto rep = verify_table(shipped(), 1, opt);
  for (auto& r : rep.rows) EXPECT_LE(r.bindings, 1u) << r.key;
}

TEST(ScaledFrameCheck, AgreesWithDirectCheckOnUnitCharts) {
  auto f = shipped().structure("A_4_7");
  EXPECT_TRUE(frame_bracket_check(invariant_frame(f), f).pass());
  EXPECT_TRUE(scaled_frame_bracket_check(f, f).pass());
}

TEST(ScaledFrameCheck, DetectsWrongClaimedConstants) {
  auto f = shipped().structure("A_4_7");
  auto g = f;
  g(1, 2, 0) *= 2;
  g(2, 1, 0) *= 2;
  EXPECT_FALSE(scaled_frame_bracket_check(f, g).pass());
}

TEST(ScaledFrameCheck, UsedWhenChartDeterminantIsNotAUnit) {
  auto f = shipped().structure("VII0+R.iii", {{"q", Rational(1)}});
  bool scaled = false;
  auto r = frame_bracket_check(f, &scaled);
  EXPECT_TRUE(scaled);
  EXPECT_TRUE(r.pass());
}

TEST(Fixtures, MatchBuiltInExamples) {
  for (int id : {1, 2}) {
    auto a = example_from_fixture(shipped(), "example" + std::to_string(id));
    auto b = integrable_example(id);
    EXPECT_EQ(a.id, id);
    EXPECT_EQ(a.P, b.P) << id;
    EXPECT_EQ(a.invariant_pairs, b.invariant_pairs);
    EXPECT_EQ(a.nonzero_coord, b.nonzero_coord);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j)
        for (size_t k = 0; k < 4; ++k) EXPECT_EQ(a.symmetry(i, j, k), b.symmetry(i, j, k));
    for (auto& x : sample_points(b, 10, 5))
      for (size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(eval_num(a.darboux[i], x), eval_num(b.darboux[i], x), 1e-12) << id << " y" << i + 1;
        EXPECT_NEAR(eval_num(a.q[i], x), eval_num(b.q[i], x), 1e-9) << id << " Q" << i + 1;
      }
  }
  EXPECT_THROW(example_from_fixture(shipped(), "example9"), InputError);
}

TEST(RenderR, WedgeAndSymmetricParts) {
  RatMatrix r = wedge_form(4, 0, 1, rat(-1, 3));
  EXPECT_EQ(render_r(r), "-1/3*X1^X2");
  r(2, 2) = 1;
  EXPECT_EQ(render_r(r), "-1/3*X1^X2 + X3.X3");
  EXPECT_EQ(render_r(RatMatrix(4, 4)), "0");
}

TEST(CFAdjugate, TimesMatrixIsDeterminant) {
  auto f = shipped().structure("VII0+R.iii", {{"q", Rational(1)}});
  auto ch = chart_coframes(f);
  CFMatrix m = ch.V;
  CFMatrix prod = cf_adjugate(m) * m;
  CF d = cf_det(m);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) EXPECT_EQ(prod(i, j), i == j ? d : CF(0)) << i << j;
}
