#include "isomono/multiplier.hpp"

namespace isomono {

cmat RationalLinear::eval(cx z) const {
    cmat out = lin * z + cst;
    if (has_num) out += num / (z - pole);
    return out;
}

cmat Multiplier::eval_inv(cx z) const {
    if (inv) return inv->eval(z);
    return fwd.eval(z).fullPivLu().inverse();
}

cx Multiplier::det_expected(cx z) const {
    cx v{1, 0};
    for (cx r : det_zeros) v *= (z - r);
    for (cx p : det_poles) v /= (z - p);
    return v;
}

double Multiplier::inverse_residual(std::span<const cx> samples) const {
    double worst = 0;
    for (cx z : samples) {
        const cmat prod = eval(z) * eval_inv(z);
        worst = std::max(worst, (prod - cmat::Identity(prod.rows(), prod.cols())).norm());
    }
    return worst;
}

double Multiplier::det_residual(std::span<const cx> samples) const {
    double worst = 0;
    for (cx z : samples) {
        const cx det = eval(z).determinant();
        const cx want = det_expected(z);
        worst = std::max(worst, std::abs(det - want) / std::max(1.0, std::abs(want)));
    }
    return worst;
}

cmat eval_composed(std::span<const Multiplier> moves, cx z) {
    if (moves.empty()) throw invalid_input("eval_composed: empty composition");
    const int m = static_cast<int>(moves.front().fwd.cst.rows());
    cmat acc = cmat::Identity(m, m);
    for (const Multiplier& mv : moves) acc = mv.eval(z) * acc;
    return acc;
}

}  // namespace isomono
