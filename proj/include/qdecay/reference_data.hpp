#pragma once

#include <span>

namespace qdecay::refdata {

/// One row of the frozen complex-erfc reference table.
struct ErfcReference {
    double z_re, z_im, erfc_re, erfc_im;
};

#include "qdecay/detail/erfc_reference_table.inc"

inline std::span<const ErfcReference> erfc_reference() { return kErfcReference; }

} // namespace qdecay::refdata
