#pragma once

#include "crbridge/tensor.hpp"

namespace crbridge {

// || k11 - k21 || + || k12 - k22 ||
//   + | ||k11 - k12|| - delta | + | ||k21 - k22|| - delta |
// with ||.|| = mean absolute difference. k11/k12 come from the image
// generator, k21/k22 from the depth generator; delta is the Chebyshev
// difference score of the two input images.
template <typename T>
Tensor<T> double_siamese_loss(Tape<T>& tape, const Tensor<T>& k11, const Tensor<T>& k12,
                              const Tensor<T>& k21, const Tensor<T>& k22, T delta_cheb) {
    if (!(k11.same_shape(k12) && k11.same_shape(k21) && k11.same_shape(k22)))
        throw std::invalid_argument("double_siamese_loss: CR shapes differ");
    const Tensor<T> delta = Tensor<T>::scalar(delta_cheb);
    Tensor<T> cross = tape.add(tape.mean_abs_diff(k11, k21), tape.mean_abs_diff(k12, k22));
    Tensor<T> img_term = tape.abs_scalar(tape.sub(tape.mean_abs_diff(k11, k12), delta));
    Tensor<T> depth_term = tape.abs_scalar(tape.sub(tape.mean_abs_diff(k21, k22), delta));
    return tape.add(cross, tape.add(img_term, depth_term));
}

// || k1 - k2 || + || k1 - k_edge || + || k2 - k_edge ||
template <typename T>
Tensor<T> common_edges_loss(Tape<T>& tape, const Tensor<T>& k1, const Tensor<T>& k2,
                            const Tensor<T>& k_edge) {
    if (!(k1.same_shape(k2) && k1.same_shape(k_edge)))
        throw std::invalid_argument("common_edges_loss: shapes differ");
    return tape.add(tape.mean_abs_diff(k1, k2),
                    tape.add(tape.mean_abs_diff(k1, k_edge), tape.mean_abs_diff(k2, k_edge)));
}

}  // namespace crbridge
