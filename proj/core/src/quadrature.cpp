#include "allpay/quadrature.hpp"

#include <cmath>
#include <limits>

#include "allpay/errors.hpp"

namespace allpay {
namespace {

struct Workspace {
    const std::function<double(double)>& f;
    std::size_t splits = 0;
    std::size_t max_splits = 0;
    double min_width = 0.0;
};

double simpson(double fa, double fm, double fb, double width) {
    return (fa + 4.0 * fm + fb) * (width / 6.0);
}

double adapt(Workspace& ws, double a, double b, double fa, double fm, double fb,
             double whole, double tol) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ws.f(lm);
    const double frm = ws.f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    // |S2-S1|/15 estimates the error of S2; accept only with an 8x safety
    // margin since the estimate is optimistic on peaked integrands. The
    // epsilon term stops recursion once the halved tolerance falls below
    // what doubles can resolve on this subinterval.
    const double err = (left + right - whole) / 15.0;
    const double machine_floor =
        32.0 * std::numeric_limits<double>::epsilon() *
            (std::abs(left) + std::abs(right)) +
        1e-300;
    if (std::abs(err) * 8.0 <= tol || std::abs(err) <= machine_floor ||
        (b - a) <= ws.min_width)
        return left + right + err;
    if (++ws.splits > ws.max_splits)
        throw NumericError("integrate: exceeded max_subdivisions without converging");
    return adapt(ws, a, m, fa, flm, fm, left, 0.5 * tol) +
           adapt(ws, m, b, fm, frm, fb, right, 0.5 * tol);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Quadrature& q) {
    if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0))
        throw DomainError("integrate: tolerances must be positive");
    if (lo > hi)
        throw DomainError("integrate: lo > hi");
    if (lo == hi)
        return 0.0;

    const double width = hi - lo;
    const double nudge = width * 1e-13;
    Workspace ws{f, 0, q.max_subdivisions, width * 1e-14};

    const double fa = f(lo + nudge);
    const double fb = f(hi - nudge);
    const double fm = f(0.5 * (lo + hi));
    const double whole = simpson(fa, fm, fb, width);
    const double tol = std::max(q.abs_tol, q.rel_tol * std::abs(whole));
    const double result = adapt(ws, lo, hi, fa, fm, fb, whole, tol);

    // The initial Simpson estimate can badly overstate a peaked integral and
    // leave the relative tolerance too loose; redo with the corrected scale.
    const double tol2 = std::max(q.abs_tol, q.rel_tol * std::abs(result));
    if (tol2 >= 0.5 * tol) return result;
    ws.splits = 0;
    return adapt(ws, lo, hi, fa, fm, fb, whole, tol2);
}

}  // namespace allpay
