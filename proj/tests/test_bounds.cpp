#include "maxdet/bounds.hpp"
#include "maxdet/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace maxdet;

namespace {

// Value printed with `decimals` places, compared within one unit of the last place.
void expect_printed(double value, double printed, int decimals, const char* what)
{
  const double unit = std::pow(10.0, -decimals);
  EXPECT_LE(std::fabs(value - printed), unit + 1e-12) << what << ": computed " << value << ", printed " << printed;
}

const MomentStats& m664()
{
  static const MomentStats m = moments(664);
  return m;
}

const MomentStats& m996()
{
  static const MomentStats m = moments(996);
  return m;
}

}  // namespace

TEST(Eta, Cases)
{
  EXPECT_EQ(eta(996, 1), 0.0);
  EXPECT_EQ(eta(996, 2), 1.0);
  EXPECT_NEAR(eta(996, 3), 160.797338380595, 1e-9);
  EXPECT_THROW(eta(996, 4), std::invalid_argument);
}

TEST(ExpandDet, Values)
{
  expect_printed(bound_expand_det(m996(), 2).ratio_bound, 0.9985, 4, "expand_det(996,2)");
  expect_printed(bound_expand_det(m996(), 3).ratio_bound, 0.9910, 4, "expand_det(996,3)");
  EXPECT_EQ(bound_expand_det(m996(), 1).ratio_bound, 1.0);
  EXPECT_EQ(bound_expand_det(moments(12), 1).ratio_bound, 1.0);
}

TEST(Chebyshev, Values)
{
  expect_printed(bound_chebyshev(m664(), 4).ratio_bound, 0.2576, 4, "chebyshev(664,4)");
  expect_printed(bound_chebyshev(m996(), 2).ratio_bound, 0.8472, 4, "chebyshev(996,2)");
  expect_printed(bound_chebyshev(m996(), 3).ratio_bound, 0.6562, 4, "chebyshev(996,3)");
  const BoundReport r = bound_chebyshev(m664(), 7);
  EXPECT_LT(r.ratio_bound, 0.0);
  EXPECT_FALSE(r.applicable);
}

TEST(ChebyshevOpt, Values)
{
  expect_printed(bound_chebyshev_opt(m664(), 4).ratio_bound, 0.3521, 4, "chebyshev_opt(664,4)");
  expect_printed(bound_chebyshev_opt(m996(), 2).ratio_bound, 0.8895, 4, "chebyshev_opt(996,2)");
  expect_printed(bound_chebyshev_opt(m996(), 3).ratio_bound, 0.7160, 4, "chebyshev_opt(996,3)");
  EXPECT_FALSE(bound_chebyshev_opt(m664(), 7).applicable);
}

TEST(ChebyshevLll, Values)
{
  expect_printed(bound_chebyshev_lll(m996(), 2).ratio_bound, 0.7480, 4, "chebyshev_lll(996,2)");
  expect_printed(bound_chebyshev_lll(m996(), 3).ratio_bound, 0.4655, 4, "chebyshev_lll(996,3)");
  EXPECT_EQ(bound_chebyshev_lll(m664(), 1).ratio_bound, 1.0);
  EXPECT_FALSE(bound_chebyshev_lll(m664(), 7).applicable);
}

TEST(CantelliHoeffding, Values)
{
  const BoundReport a = bound_cantelli_hoeffding(m664(), 4, true);
  expect_printed(a.ratio_bound, 0.6781, 4, "ratio");
  expect_printed(*a.lambda, 0.05619, 5, "lambda");
  expect_printed(*a.t, 0.1341, 4, "t");
  const BoundReport b = bound_cantelli_hoeffding(m664(), 7, true);
  expect_printed(b.ratio_bound, 0.0742, 4, "ratio");
  expect_printed(*b.lambda, 0.08010, 5, "lambda");
  expect_printed(*b.t, 0.1448, 4, "t");
  const BoundReport c = bound_cantelli_hoeffding(m664(), 4, false);
  expect_printed(c.ratio_bound, 0.7565, 4, "ratio");
  expect_printed(*c.lambda, 0.03870, 5, "lambda");
  expect_printed(*c.t, 0.1222, 4, "t");
  const BoundReport d = bound_cantelli_hoeffding(m664(), 7, false);
  expect_printed(d.ratio_bound, 0.1326, 4, "ratio");
  expect_printed(*d.lambda, 0.06924, 5, "lambda");
  expect_printed(*d.t, 0.1405, 4, "t");
}

TEST(CantelliHoeffding, InapplicableWhenParametersTooLarge)
{
  const BoundReport r = bound_cantelli_hoeffding(moments(12), 6, true);
  EXPECT_FALSE(r.applicable);
  EXPECT_GT(*r.lambda + 5 * *r.t, 1.0);
  EXPECT_THROW(bound_cantelli_hoeffding(m664(), 1, true), std::invalid_argument);
}

TEST(SimpleCondition, Cases)
{
  EXPECT_TRUE(simple_condition(664, 4));
  EXPECT_FALSE(simple_condition(664, 7));
  EXPECT_FALSE(simple_condition(4, 1));
}

TEST(TwoParam, PublishedLambdas)
{
  const BoundReport a = bound_two_param(m664(), 4, 0.01728, BoundMethod::two_param_cor5);
  expect_printed(a.ratio_bound, 0.7975, 4, "ratio");
  expect_printed(*a.t, 0.1394, 4, "t");
  const BoundReport b = bound_two_param(m996(), 2, 0.00732, BoundMethod::two_param_cor5);
  expect_printed(b.ratio_bound, 0.9741, 4, "ratio");
  expect_printed(*b.t, 0.1066, 4, "t");
}

TEST(TwoParam, LambdaNearOneIsInapplicable)
{
  EXPECT_FALSE(bound_two_param(m664(), 4, 0.999, BoundMethod::two_param_cor5).applicable);
  EXPECT_THROW(bound_two_param(m664(), 4, 1.0, BoundMethod::two_param_cor5), std::invalid_argument);
  EXPECT_THROW(bound_two_param(m664(), 4, 0.0, BoundMethod::two_param_cor5), std::invalid_argument);
}

TEST(TwoParam, ClosedFormLambda)
{
  expect_printed(lambda_cor5(m664(), 4), 0.01728, 5, "lambda(664,4)");
  expect_printed(lambda_cor5(m664(), 7), 0.02624, 5, "lambda(664,7)");
  expect_printed(lambda_cor5(m996(), 2), 0.00732, 5, "lambda(996,2)");
  expect_printed(lambda_cor5(m996(), 3), 0.01055, 5, "lambda(996,3)");
}

TEST(TwoParam, OptimalLambda)
{
  const LambdaOptimum a = optimize_lambda(m664(), 4);
  expect_printed(a.lambda, 0.01937, 5, "lambda*(664,4)");
  expect_printed(a.report.ratio_bound, 0.7990, 4, "ratio");
  expect_printed(*a.report.t, 0.1352, 4, "t");
  const LambdaOptimum b = optimize_lambda(m664(), 7);
  expect_printed(b.lambda, 0.04238, 5, "lambda*(664,7)");
  expect_printed(b.report.ratio_bound, 0.1667, 4, "ratio");
  expect_printed(*b.report.t, 0.1441, 4, "t");
  const LambdaOptimum c = optimize_lambda(m996(), 2);
  expect_printed(c.lambda, 0.00733, 5, "lambda*(996,2)");
  expect_printed(c.report.ratio_bound, 0.9741, 4, "ratio");
  expect_printed(*c.report.t, 0.1065, 4, "t");
  const LambdaOptimum d = optimize_lambda(m996(), 3);
  expect_printed(d.lambda, 0.01102, 5, "lambda*(996,3)");
  expect_printed(d.report.ratio_bound, 0.9288, 4, "ratio");
  // the published t for this cell (0.1010) is inconsistent with its own ratio
  expect_printed(*d.report.t, 0.1100, 4, "t");
}

TEST(TwoParam, OptimumDominatesClosedFormLambda)
{
  for (long h : {100L, 200L, 400L, 664L, 996L})
    for (long d = 2; d <= 6; ++d) {
      const MomentStats m = moments(h);
      const BoundReport cor = bound_two_param(m, d, lambda_cor5(m, d), BoundMethod::two_param_cor5);
      const LambdaOptimum opt = optimize_lambda(m, d);
      if (cor.applicable) {
        ASSERT_TRUE(opt.report.applicable) << h << " " << d;
        EXPECT_GE(opt.report.ratio_bound, cor.ratio_bound - 1e-12) << h << " " << d;
      }
    }
}

TEST(GoldenSection, FindsQuadraticPeak)
{
  const double x = golden_section_max([](double v) { return -(v - 0.3) * (v - 0.3); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(x, 0.3, 1e-8);
}

TEST(Sharpe, Values)
{
  EXPECT_NEAR(sharpe_dbar(2), 0.564191866416106, 1e-12);
  EXPECT_NEAR(sharpe_dbar(1), 0.769800358919501, 1e-12);
  EXPECT_GT(sharpe_dbar(7), std::pow(2.0 / (std::numbers::pi * std::numbers::e), 1.5));
  EXPECT_NEAR(bound_sharpe(2), 3.0 * std::log(8.0), 1e-12);
  EXPECT_THROW(bound_sharpe(0), std::invalid_argument);
}

TEST(ConvertDbar, Values)
{
  EXPECT_NEAR(convert_dbar(664, 4, 1.0), 0.06583229163973774, 1e-12);
  expect_printed(convert_dbar(664, 4, 0.7990), 0.05260, 5, "convert(664,4,0.7990)");
  EXPECT_THROW(convert_dbar(664, 4, 0.0), std::domain_error);
  const BoundReport r = evaluate(BoundMethod::chebyshev, moments(4), 0);
  EXPECT_EQ(r.dbar_bound, 1.0);
}

TEST(ClosedForms, Values)
{
  const double base = 2.0 / (std::numbers::pi * std::numbers::e);
  const ClosedFormValue c2 = closed_form_dbar(664, 4, ClosedForm::cor2);
  EXPECT_NEAR(c2.value, 0.012165122628099547, 1e-12);
  EXPECT_TRUE(c2.applicable);
  const ClosedFormValue t = closed_form_dbar(100, 3, ClosedForm::target_const);
  EXPECT_NEAR(t.value, std::pow(base, 1.5), 1e-15);
  EXPECT_GT(t.value, 0.1133);
  // nontrivial only when h > pi d^4 / 2
  EXPECT_FALSE(closed_form_dbar(400, 4, ClosedForm::cor2).applicable);
  EXPECT_TRUE(closed_form_dbar(404, 4, ClosedForm::cor2).applicable);
}

TEST(ClosedForms, NeverExceedTheSharperConversion)
{
  for (long h = 4; h <= 2000; h += 4) {
    const MomentStats m = moments(h);
    for (long d = 1; d <= 9; ++d) {
      const ClosedFormValue c2 = closed_form_dbar(h, d, ClosedForm::cor2);
      const BoundReport cheb = bound_chebyshev(m, d);
      if (c2.applicable && cheb.applicable) {
        EXPECT_LE(c2.value, cheb.dbar_bound * (1 + 1e-12)) << h << " " << d;
      }
      if (d >= 2) {
        const ClosedFormValue c3 = closed_form_dbar(h, d, ClosedForm::cor3);
        const BoundReport lll = bound_chebyshev_lll(m, d);
        if (c3.applicable && lll.applicable) {
          EXPECT_LE(c3.value, lll.dbar_bound * (1 + 1e-12)) << h << " " << d;
        }
      }
    }
  }
}

TEST(Perturbation, BoundValues)
{
  EXPECT_EQ(perturbation_bound(4, 0.0, 0.0), 1.0);
  EXPECT_NEAR(perturbation_bound(3, 0.1, 0.1), 0.7, 1e-15);
  EXPECT_NEAR(perturbation_bound(2, 0.5, 0.5), 0.0, 1e-15);
  EXPECT_THROW(perturbation_bound(3, 0.6, 0.3), std::invalid_argument);
  EXPECT_THROW(perturbation_bound(3, -0.1, 0.1), std::invalid_argument);
  EXPECT_EQ(perturbation_bound<BigRational>(3, BigRational(1, 10), BigRational(1, 10)), BigRational(7, 10));
}

TEST(Dominance, ChebyshevOptBeatsLllForSmallD)
{
  for (long h = 4; h <= 2000; h += 4) {
    const MomentStats m = moments(h);
    for (long d = 2; d <= 9; ++d)
      EXPECT_GE(bound_chebyshev_opt(m, d).ratio_bound, bound_chebyshev_lll(m, d).ratio_bound) << h << " " << d;
  }
}

TEST(Dominance, NoLllBeatsLllVariantBelowTen)
{
  for (long h = 4; h <= 2000; h += 4) {
    const MomentStats m = moments(h);
    for (long d = 2; d <= 9; ++d) {
      const BoundReport lll = bound_cantelli_hoeffding(m, d, true);
      const BoundReport plain = bound_cantelli_hoeffding(m, d, false);
      if (lll.applicable) {
        EXPECT_TRUE(plain.applicable) << h << " " << d;
        EXPECT_GE(plain.ratio_bound, lll.ratio_bound) << h << " " << d;
      }
    }
  }
}

TEST(Evaluate, ApplicabilityByD)
{
  const MomentStats m = m664();
  EXPECT_FALSE(evaluate(BoundMethod::expand_det, m, 4).applicable);
  EXPECT_FALSE(evaluate(BoundMethod::two_param_opt, m, 1).applicable);
  EXPECT_FALSE(evaluate(BoundMethod::sharpe, m, 4).applicable);  // 669 is not 4k - 1
  EXPECT_TRUE(evaluate(BoundMethod::sharpe, m996(), 3).applicable);
  EXPECT_NEAR(evaluate(BoundMethod::sharpe, m996(), 3).dbar_bound, sharpe_dbar(250), 1e-15);
  for (BoundMethod b : kAllMethods) {
    const BoundReport r = evaluate(b, m, 0);
    EXPECT_TRUE(r.applicable);
    EXPECT_EQ(r.dbar_bound, 1.0);
  }
  EXPECT_THROW(evaluate(BoundMethod::chebyshev, m, -1), std::invalid_argument);
}

TEST(Evaluate, MethodIdsRoundTrip)
{
  for (BoundMethod b : kAllMethods) EXPECT_EQ(parse_method(method_id(b)), b);
  EXPECT_FALSE(parse_method("nope"));
}

TEST(Table, SingleBorderRow)
{
  const BoundTable t = make_table(996, {1});
  ASSERT_EQ(t.columns.size(), 1u);
  const BoundReport& e = t.columns[0].rows[0];
  EXPECT_EQ(e.method, BoundMethod::expand_det);
  EXPECT_EQ(e.ratio_bound, 1.0);
  EXPECT_NE(render_table_text(t).find("expand_det                    1.0000"), std::string::npos);
}

TEST(Table, TextMarksInapplicableWithDashes)
{
  const std::string text = render_table_text(make_table(664, {7}));
  EXPECT_NE(text.find("chebyshev                        ---"), std::string::npos);
  EXPECT_NE(text.find("two_param_opt                 0.1667   0.04238   0.1441"), std::string::npos);
}

TEST(Table, JsonHasSchemaAndNulls)
{
  const nlohmann::json j = table_json(make_table(664, {4, 7}));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["columns"].size(), 2u);
  EXPECT_TRUE(j["columns"][1]["methods"]["chebyshev"]["dbar"].is_null());
  EXPECT_FALSE(j["columns"][0]["methods"]["two_param_opt"]["lambda"].is_null());
}
