#pragma once

#include <stdexcept>
#include <string>

namespace help {

// Bad numeric parameter (non-prime modulus, non-invertible exponent, ...).
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Arithmetic between elements of Q(zeta_p) and Q(zeta_q) with p != q.
struct incompatible_field : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A caller-supplied map or assignment is missing entries.
struct incomplete_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A partial augmentation whose eigenvalue layout would need a negative multiplicity.
struct inadmissible : std::domain_error {
  using std::domain_error::domain_error;
};

// A symbolic identity that must hold did not. Always an arithmetic bug.
struct identity_violation : std::logic_error {
  using std::logic_error::logic_error;
};

// Two computations of the same quantity disagree.
struct internal_consistency : std::logic_error {
  using std::logic_error::logic_error;
};

// The brute-force oracle found a surviving assignment or disagreed with the ledger.
struct oracle_disagreement : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace help
