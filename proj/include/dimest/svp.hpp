#pragma once

#include "dimest/autoencoder.hpp"
#include "dimest/spectrum.hpp"

namespace dimest {

/// Singular value proxies from a batch of innermost hidden activations:
/// take absolute values, sort each row descending, then average columns.
/// The resulting vector is non-negative and descending.
Spectrum to_svp(const HiddenBatch& hidden);

}  // namespace dimest
