#include "mpcov/quadrature.hpp"

#include <cmath>
#include <vector>

namespace mpcov {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1,1] (Kronrod nodes are
// interior; the embedded 7-point Gauss rule sits at the odd indices).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  double coarse;  // embedded Gauss-7
  double fine;    // Kronrod-15
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * fsum;
  }
  return {resg * h, resk * h};
}

constexpr double kGl16X[8] = {
    0.095012509837637440185319335425958,
    0.281603550779258913230460501460496,
    0.458016777657227386342419442983578,
    0.617876244402643748446671764048791,
    0.755404408355003033895101194847442,
    0.865631202387831743880467897712393,
    0.944575023073232576077988415534608,
    0.989400934991649932596154173450333};

constexpr double kGl16W[8] = {
    0.189450610455068496285396723208283,
    0.182603415044923588866763667969220,
    0.169156519395002538189312079030360,
    0.149595988816576732081501730547478,
    0.124628971255533872052476282192016,
    0.095158511682492784809925107602246,
    0.062253523938647892862843836994378,
    0.027152459411754094851780572456018};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth) {
  struct Node {
    double a, b, tol;
    int depth;
  };
  QuadratureResult out;
  if (a == b) return out;
  std::vector<Node> stack;
  stack.push_back({a, b, abs_tol, 0});
  while (!stack.empty()) {
    const Node node = stack.back();
    stack.pop_back();
    const PanelEstimate est = gk15(f, node.a, node.b);
    out.evaluations += 15;
    const double err = std::fabs(est.fine - est.coarse);
    if (err <= node.tol || node.depth >= max_depth) {
      out.value += est.fine;
      out.error_estimate += err;
      continue;
    }
    const double mid = 0.5 * (node.a + node.b);
    const double child_tol = 0.5 * node.tol;
    stack.push_back({node.a, mid, child_tol, node.depth + 1});
    stack.push_back({mid, node.b, child_tol, node.depth + 1});
  }
  return out;
}

double integrate_gl16(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double acc = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double x = h * kGl16X[j];
    acc += kGl16W[j] * (f(c - x) + f(c + x));
  }
  return acc * h;
}

}  // namespace mpcov
