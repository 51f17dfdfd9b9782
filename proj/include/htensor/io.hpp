#pragma once

// JSON file formats for tensors, spin states and coherent-state mixtures.
//
//   tensor:  {"order": m, "dim": n, "entries": [{"idx": [1,2,..], "val": v}, ...],
//             "symmetrize": false}
//            v is a number or [re, im]. Diagonal entries must be real; other
//            complex entries are stored by modulus.
//   state:   {"m": 2j, "rho_re": [[..]], "rho_im": [[..]]}   (rho_im optional)
//   mixture: {"m": 2j, "components": [{"w": .., "theta": .., "phi": ..}, ...]}
//
// Malformed input throws Error(ParseError, ...) naming the offending field.

#include <string>
#include <string_view>
#include <vector>

#include "htensor/spin.hpp"
#include "htensor/tensor.hpp"

namespace htensor {

DenseTensor parse_tensor(std::string_view text);
DenseTensor load_tensor(const std::string& path);
/// Nonzero entries only, 1-based, values printed round-trip exact.
std::string tensor_to_json(const DenseTensor& t);

struct MixtureSpec {
    int m = 0;
    std::vector<double> weights;
    std::vector<Direction> dirs;
};

SpinState parse_state(std::string_view text);
MixtureSpec parse_mixture(std::string_view text);
std::string state_to_json(const SpinState& state);

/// A state file or a mixture file, told apart by the "components" key.
SpinState load_spin_input(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace htensor
