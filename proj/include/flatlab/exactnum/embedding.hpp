#pragma once

#include <optional>
#include <vector>

#include "flatlab/exactnum/galois_field.hpp"
#include "flatlab/ratfunc/poly.hpp"

namespace flatlab {

/// Explicit field embedding F_{p^a} -> F_{p^b} (a | b).
///
/// The generator of the source is sent to the smallest root (by raw value) of
/// its modulus in the target, so the map is reproducible.
class Embedding {
public:
    Embedding(GaloisField source, GaloisField target);

    static Embedding identity(const GaloisField& field) { return Embedding(field, field); }

    const GaloisField& source() const { return source_; }
    const GaloisField& target() const { return target_; }

    FqRaw apply(const FqRaw& x) const;
    /// Preimage of y, or nullopt when y is not in the image.
    std::optional<FqRaw> pullback(const FqRaw& y) const;
    Poly<GaloisField> lift(const Poly<GaloisField>& f) const;
    /// Pulls back every coefficient; throws InternalError if one is outside the image.
    Poly<GaloisField> descend(const Poly<GaloisField>& f) const;

private:
    GaloisField source_;
    GaloisField target_;
    std::vector<FqRaw> basis_images_;  // image of a^i for i < source degree
};

}  // namespace flatlab
