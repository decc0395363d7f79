#ifndef MONOLAB_PURE_STATE_HPP
#define MONOLAB_PURE_STATE_HPP

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "monolab/complex_matrix.hpp"
#include "monolab/qubit_register.hpp"

namespace monolab {

inline constexpr double kNormTol = 1e-9;

// Complex amplitude vector over an ordered qubit register. Construction
// requires unit norm within kNormTol; use normalized_state for raw vectors.
class PureState {
  public:
    PureState(QubitRegister reg, std::vector<Complex> amplitudes);

    const QubitRegister& reg() const { return reg_; }
    int num_qubits() const { return reg_.size(); }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    Complex amplitude(std::size_t basis_index) const { return amps_.at(basis_index); }
    double norm() const;

    ComplexMatrix density() const;
    // Reduced density operator on `keep`, ordered by keep (most significant
    // first). Contracts the amplitudes directly.
    ComplexMatrix reduced_density(std::span<const std::string> keep) const;
    ComplexMatrix reduced_density(std::initializer_list<std::string> keep) const;

  private:
    QubitRegister reg_;
    std::vector<Complex> amps_;
};

// Rescales to unit norm; ArgumentError on (near-)zero vectors.
PureState normalized_state(QubitRegister reg, std::vector<Complex> amplitudes);

}  // namespace monolab

#endif
