#pragma once

#include "burnscan/exec.hpp"
#include "burnscan/grid.hpp"
#include "burnscan/severity.hpp"

#include <cstdint>
#include <optional>

namespace burnscan {

/// Binary agreement counts; reference positives are mask == 1, predicted
/// positives are severity rank >= min_class. Pixels nodata in either layer
/// are excluded entirely.
struct ConfusionMatrix {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;
    uint64_t tn = 0;

    uint64_t total() const { return tp + fp + fn + tn; }
};

struct AgreementMetrics {
    double overall_accuracy = 0;
    double dice = 0;
    double kappa = 0;
    std::optional<double> omission_error;   // absent when tp + fn == 0
    std::optional<double> commission_error; // absent when tp + fp == 0
};

/// Tally prediction vs reference over co-valid pixels.
ConfusionMatrix confusion(const Grid& pred_classes, SeverityClass min_class, const Grid& ref_mask,
                          const ExecPolicy& exec = {});

/// Binary-mask variant (both grids hold 0/1/nodata).
ConfusionMatrix confusion_masks(const Grid& pred_mask, const Grid& ref_mask, const ExecPolicy& exec = {});

/// Derive accuracy fractions. kappa = (po - pe) / (1 - pe); when both
/// layers agree on a single class everywhere (pe == 1) kappa is defined as
/// 1. Throws Errc::EmptyMatrix when total == 0.
AgreementMetrics metrics(const ConfusionMatrix& m);

} // namespace burnscan
