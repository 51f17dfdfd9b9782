#pragma once

#include <random>
#include <string>
#include <vector>

#include "htensor/tensor.hpp"

namespace fixtures {

inline htensor::Index tuple(const std::string& digits) {
    htensor::Index idx;
    for (char c : digits) idx.push_back(c - '0');
    return idx;
}

inline htensor::DenseTensor from_digits(int order, int dim, const std::vector<std::pair<std::string, double>>& list) {
    std::vector<htensor::Entry> entries;
    for (const auto& [d, v] : list) entries.push_back({tuple(d), v});
    return htensor::build_tensor(order, dim, entries);
}

// order 4, dim 2
inline htensor::DenseTensor example1() {
    return from_digits(4, 2, {{"1111", 7}, {"1112", -2}, {"1121", -2}, {"1211", -2}, {"2111", -2},
                              {"2222", 6}, {"2221", -1}, {"2212", -1}, {"2122", -1}, {"1222", -1}});
}

// order 4, dim 4
inline htensor::DenseTensor example2() {
    std::vector<std::pair<std::string, double>> list{{"1111", 10}, {"2222", 8}, {"3333", 7}, {"4444", 5}};
    for (const char* t : {"1333", "1444", "1211", "1113", "1141", "1332", "1442", "1232", "1234",
                          "1321", "1214", "2333", "2444", "2112", "2234", "2113", "2343", "2123",
                          "3222", "3111", "3121", "3434", "3123", "4222", "4111", "4121", "4334"}) {
        list.emplace_back(t, 1.0);
    }
    return from_digits(4, 4, list);
}

// Sparse random tensor: each entry nonzero with probability `density`,
// integer values in [-5, 5], diagonals drawn from [-diag, diag].
inline htensor::DenseTensor random_tensor(std::mt19937_64& rng, int order, int dim, double density = 0.4,
                                          double diag = 10.0, bool integer = true) {
    htensor::DenseTensor t(order, dim);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> small(-5, 5);
    std::uniform_real_distribution<double> real(-5.0, 5.0);
    std::uniform_real_distribution<double> d(-diag, diag);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (coin(rng) < density) t.set_flat(k, integer ? small(rng) : real(rng));
    }
    for (int i = 0; i < dim; ++i) t.set_flat(t.diagonal_offset(i), d(rng));
    return t;
}

}  // namespace fixtures
