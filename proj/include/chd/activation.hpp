#pragma once

#include <string>

#include "chd/error.hpp"
#include "chd/linalg.hpp"

namespace chd {

enum class Activation { relu, sigmoid, identity };

inline double apply_activation(Activation a, double z) {
    switch (a) {
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::sigmoid: return sigmoid(z);
        case Activation::identity: return z;
    }
    throw config_error("apply_activation: unknown activation");
}

inline const char* activation_name(Activation a) {
    switch (a) {
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
        case Activation::identity: return "identity";
    }
    throw config_error("activation_name: unknown activation");
}

inline Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::relu;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "identity") return Activation::identity;
    throw config_error("unknown activation '" + name + "'");
}

} // namespace chd
