#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "chd/error.hpp"
#include "chd/linalg.hpp"

namespace chd {

enum class DictionaryProvenance { dct_overcomplete, learned, explicit_atoms };

/// A set of unit-norm basis vectors ("atoms") of one common dimension.
struct Dictionary {
    std::vector<std::vector<double>> atoms;
    DictionaryProvenance provenance = DictionaryProvenance::explicit_atoms;

    std::size_t atom_count() const { return atoms.size(); }
    std::size_t dimension() const { return atoms.empty() ? 0 : atoms.front().size(); }
};

/// Builds a dictionary from explicit atoms, normalizing each to unit norm.
inline Dictionary make_dictionary(std::vector<std::vector<double>> atoms,
                                  DictionaryProvenance provenance =
                                      DictionaryProvenance::explicit_atoms) {
    if (atoms.empty()) throw config_error("make_dictionary: no atoms given");
    const std::size_t dim = atoms.front().size();
    for (auto& a : atoms) {
        if (a.size() != dim) throw shape_error("make_dictionary: atoms differ in dimension");
        const double n = norm2(a);
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw numeric_error("make_dictionary: atom with zero or non-finite norm");
        }
        for (double& x : a) x /= n;
    }
    Dictionary d;
    d.atoms = std::move(atoms);
    d.provenance = provenance;
    return d;
}

/// Overcomplete 2-D DCT dictionary for ph x pw patches with atoms_per_dim^2
/// atoms: separable cosine products, mean removed from the non-constant
/// frequencies, every column normalized. The usual predefined basis for
/// patch-wise sparse coding.
inline Dictionary make_dct_dictionary(std::size_t ph, std::size_t pw, std::size_t atoms_per_dim) {
    if (ph < 1 || pw < 1 || atoms_per_dim < 1) {
        throw config_error("make_dct_dictionary: sizes must be >= 1");
    }
    const auto base_1d = [](std::size_t n, std::size_t n_atoms) {
        std::vector<std::vector<double>> basis(n_atoms, std::vector<double>(n));
        for (std::size_t k = 0; k < n_atoms; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                basis[k][i] = std::cos(static_cast<double>(i) * static_cast<double>(k) *
                                       std::numbers::pi / static_cast<double>(n_atoms));
            }
            if (k > 0) {
                double mean = 0.0;
                for (double v : basis[k]) mean += v;
                mean /= static_cast<double>(n);
                for (double& v : basis[k]) v -= mean;
            }
        }
        return basis;
    };

    const auto rows = base_1d(ph, atoms_per_dim);
    const auto cols = base_1d(pw, atoms_per_dim);
    std::vector<std::vector<double>> atoms;
    atoms.reserve(atoms_per_dim * atoms_per_dim);
    for (std::size_t ky = 0; ky < atoms_per_dim; ++ky) {
        for (std::size_t kx = 0; kx < atoms_per_dim; ++kx) {
            std::vector<double> atom(ph * pw);
            for (std::size_t y = 0; y < ph; ++y)
                for (std::size_t x = 0; x < pw; ++x)
                    atom[y * pw + x] = rows[ky][y] * cols[kx][x];
            atoms.push_back(std::move(atom));
        }
    }
    return make_dictionary(std::move(atoms), DictionaryProvenance::dct_overcomplete);
}

} // namespace chd
