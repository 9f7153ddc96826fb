#include "burnscan/assessment.hpp"

#include "burnscan/errors.hpp"

#include <cmath>

namespace burnscan {

namespace {

ConfusionMatrix tally(const Grid& pred, const Grid& ref, int min_rank, bool pred_is_mask,
                      const ExecPolicy& exec) {
    require_aligned(pred, ref, "confusion");
    const float* pv = pred.values().data();
    const float* rv = ref.values().data();
    const int w = pred.width();

    auto per_tile = [&](const Window& win) {
        ConfusionMatrix m;
        for (int r = win.row_off; r < win.row_off + win.height; ++r) {
            size_t base = static_cast<size_t>(r) * w;
            for (int c = win.col_off; c < win.col_off + win.width; ++c) {
                float p = pv[base + c], t = rv[base + c];
                if (Grid::is_nodata(p) || Grid::is_nodata(t)) continue;
                bool pred_pos = pred_is_mask ? std::lround(p) == 1 : std::lround(p) >= min_rank;
                bool ref_pos = std::lround(t) == 1;
                if (pred_pos && ref_pos) ++m.tp;
                else if (pred_pos) ++m.fp;
                else if (ref_pos) ++m.fn;
                else ++m.tn;
            }
        }
        return m;
    };
    auto fold = [](ConfusionMatrix a, const ConfusionMatrix& b) {
        a.tp += b.tp;
        a.fp += b.fp;
        a.fn += b.fn;
        a.tn += b.tn;
        return a;
    };
    return reduce_tiled<ConfusionMatrix>(pred.width(), pred.height(), exec, ConfusionMatrix{}, per_tile, fold);
}

} // namespace

ConfusionMatrix confusion(const Grid& pred_classes, SeverityClass min_class, const Grid& ref_mask,
                          const ExecPolicy& exec) {
    return tally(pred_classes, ref_mask, static_cast<int>(min_class), false, exec);
}

ConfusionMatrix confusion_masks(const Grid& pred_mask, const Grid& ref_mask, const ExecPolicy& exec) {
    return tally(pred_mask, ref_mask, 0, true, exec);
}

AgreementMetrics metrics(const ConfusionMatrix& m) {
    double total = static_cast<double>(m.total());
    if (m.total() == 0) fail(Errc::EmptyMatrix, "no co-valid pixels to assess");

    AgreementMetrics out;
    double tp = static_cast<double>(m.tp), fp = static_cast<double>(m.fp);
    double fn = static_cast<double>(m.fn), tn = static_cast<double>(m.tn);

    out.overall_accuracy = (tp + tn) / total;
    double dice_denom = 2 * tp + fp + fn;
    out.dice = dice_denom > 0 ? 2 * tp / dice_denom : 1.0; // both sides all-negative: perfect overlap
    if (tp + fn > 0) out.omission_error = fn / (tp + fn);
    if (tp + fp > 0) out.commission_error = fp / (tp + fp);

    double po = out.overall_accuracy;
    double pe = ((tp + fp) * (tp + fn) + (fn + tn) * (fp + tn)) / (total * total);
    out.kappa = pe == 1.0 ? 1.0 : (po - pe) / (1.0 - pe);
    return out;
}

} // namespace burnscan
