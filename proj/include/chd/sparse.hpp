#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "chd/dictionary.hpp"
#include "chd/error.hpp"
#include "chd/linalg.hpp"
#include "chd/patches.hpp"
#include "chd/volume.hpp"

namespace chd {

/// Sparse approximation of one signal: distinct (atom index, coefficient)
/// pairs, at most `sparsity` of them, plus the final residual norm.
struct SparseCode {
    std::vector<std::pair<std::size_t, double>> entries;
    std::size_t sparsity = 0;
    double residual_norm = 0.0;
};

namespace detail {

inline constexpr double kOmpResidualStop = 1e-10;

}

/// Orthogonal matching pursuit: greedily pick the atom most correlated with
/// the residual (ties toward the lower index), then re-solve least squares
/// over every selected atom and update the residual. Stops after k picks or
/// once the residual norm falls below 1e-10.
inline SparseCode omp(const Dictionary& dict, const std::vector<double>& signal, std::size_t k) {
    if (dict.atom_count() == 0) throw config_error("omp: empty dictionary");
    if (signal.size() != dict.dimension()) {
        throw shape_error("omp: signal dimension " + std::to_string(signal.size()) +
                          " does not match atom dimension " + std::to_string(dict.dimension()));
    }
    if (k > dict.atom_count()) throw config_error("omp: sparsity exceeds atom count");

    SparseCode code;
    code.sparsity = k;
    std::vector<double> residual = signal;
    std::vector<std::size_t> support;
    std::vector<bool> selected(dict.atom_count(), false);
    std::vector<double> coeffs;

    code.residual_norm = norm2(residual);
    while (support.size() < k && code.residual_norm >= detail::kOmpResidualStop) {
        std::size_t best = dict.atom_count();
        double best_corr = -1.0;
        for (std::size_t j = 0; j < dict.atom_count(); ++j) {
            if (selected[j]) continue;
            const double corr = std::abs(dot(residual, dict.atoms[j]));
            if (corr > best_corr) {
                best_corr = corr;
                best = j;
            }
        }
        if (best == dict.atom_count()) break;
        selected[best] = true;
        support.push_back(best);

        // least squares over the selected atoms via the normal equations
        const std::size_t s = support.size();
        Matrix gram(s, s);
        Vec rhs(s);
        for (std::size_t a = 0; a < s; ++a) {
            for (std::size_t b = 0; b <= a; ++b) {
                const double g = dot(dict.atoms[support[a]], dict.atoms[support[b]]);
                gram(a, b) = g;
                gram(b, a) = g;
            }
            rhs[a] = dot(dict.atoms[support[a]], signal);
        }
        coeffs = solve_spd(std::move(gram), std::move(rhs));

        residual = signal;
        for (std::size_t a = 0; a < s; ++a) {
            axpy(-coeffs[a], dict.atoms[support[a]], residual);
        }
        code.residual_norm = norm2(residual);
    }

    code.entries.reserve(support.size());
    for (std::size_t a = 0; a < support.size(); ++a) {
        code.entries.emplace_back(support[a], coeffs[a]);
    }
    return code;
}

/// Drops every coefficient with magnitude below tau.
inline SparseCode threshold_code(const SparseCode& code, double tau) {
    SparseCode out;
    out.sparsity = code.sparsity;
    out.residual_norm = code.residual_norm;
    for (const auto& [idx, c] : code.entries) {
        if (std::abs(c) >= tau) out.entries.emplace_back(idx, c);
    }
    return out;
}

/// Sum of coefficient * atom.
inline std::vector<double> reconstruct(const Dictionary& dict, const SparseCode& code) {
    std::vector<double> out(dict.dimension(), 0.0);
    for (const auto& [idx, c] : code.entries) {
        if (idx >= dict.atom_count()) throw shape_error("reconstruct: atom index out of range");
        axpy(c, dict.atoms[idx], out);
    }
    return out;
}

struct PatchConfig {
    std::size_t ph = 8;
    std::size_t pw = 8;
};

/// Patch-wise sparse decomposition of a plane: per non-overlapping patch,
/// omp -> threshold -> reconstruct. The sparse plane tiles the patch
/// reconstructions; the residual plane is input minus sparse, so the two
/// components always add back to the input.
struct CsidResult {
    Volume sparse;
    Volume residual;
    std::vector<SparseCode> codes; // row-major patch order
};

inline CsidResult csid_decompose(const Volume& plane, const Dictionary& dict, std::size_t k,
                                 double tau, PatchConfig patch = {}) {
    if (dict.dimension() != patch.ph * patch.pw) {
        throw shape_error("csid_decompose: dictionary dimension does not match the patch size");
    }
    const auto patches = extract_patches(plane, patch.ph, patch.pw, patch.ph == patch.pw
                                                                         ? patch.ph
                                                                         : patch.ph);
    CsidResult result;
    std::vector<std::vector<double>> rebuilt;
    rebuilt.reserve(patches.size());
    for (const auto& p : patches) {
        SparseCode code = threshold_code(omp(dict, p, k), tau);
        rebuilt.push_back(reconstruct(dict, code));
        result.codes.push_back(std::move(code));
    }
    result.sparse = reconstruct_patches(rebuilt, plane.height, plane.width, patch.ph, patch.pw);
    result.residual = plane;
    for (std::size_t i = 0; i < plane.size(); ++i) {
        result.residual.data[i] = plane.data[i] - result.sparse.data[i];
    }
    return result;
}

} // namespace chd
