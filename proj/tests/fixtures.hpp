// Shared fixture builders mirroring the data/ problem files.

#ifndef FLATSUB_TESTS_FIXTURES_HPP
#define FLATSUB_TESTS_FIXTURES_HPP

#include <string>

#include "flatsub/metric.hpp"
#include "flatsub/polynomial.hpp"
#include "flatsub/problem.hpp"

namespace fixtures {

using flatsub::MetricMatrix;
using flatsub::Polynomial;
using flatsub::Rational;

inline std::string data_dir() { return FLATSUB_DATA_DIR; }
inline std::string cli_path() { return FLATSUB_CLI_PATH; }

inline std::string data_file(const std::string& name) { return data_dir() + "/" + name; }

// Cubic-quintic associativity solution in three variables.
inline Polynomial golden_phi() {
    Polynomial p(3);
    p.add_term({2, 0, 1}, Rational(1, 2));
    p.add_term({1, 2, 0}, Rational(1, 2));
    p.add_term({0, 2, 2}, Rational(1, 4));
    p.add_term({0, 0, 5}, Rational(1, 60));
    return p;
}

inline Polynomial perturbed_phi(const Rational& eps) {
    Polynomial p = golden_phi();
    p.add_term({2, 2, 0}, eps);
    return p;
}

inline MetricMatrix golden_eta() { return MetricMatrix::antidiagonal(3); }

inline flatsub::ProblemSpec load(const std::string& name,
                                 flatsub::ArithmeticMode mode = flatsub::ArithmeticMode::rational) {
    return flatsub::load_problem_file(data_file(name), mode);
}

} // namespace fixtures

#endif
