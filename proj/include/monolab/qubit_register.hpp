#ifndef MONOLAB_QUBIT_REGISTER_HPP
#define MONOLAB_QUBIT_REGISTER_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "monolab/errors.hpp"

namespace monolab {

inline constexpr int kMaxQubits = 8;  // 2^8 = 256-dimensional hard cap

// Ordered sequence of distinct qubit labels. Label position 0 is the most
// significant bit of a computational-basis index, so |c1 r1 c2 r2> reads
// left to right.
class QubitRegister {
  public:
    explicit QubitRegister(std::vector<std::string> labels) : labels_(std::move(labels)) {
        validate();
    }
    QubitRegister(std::initializer_list<std::string> labels)
        : QubitRegister(std::vector<std::string>(labels)) {}

    // c1, r1, c2, r2, ... for `pairs` cavity-reservoir pairs.
    static QubitRegister cavity_reservoir_pairs(int pairs) {
        if (pairs < 1 || 2 * pairs > kMaxQubits) {
            throw CapacityError("cavity_reservoir_pairs: need 1..4 pairs");
        }
        std::vector<std::string> labels;
        for (int i = 1; i <= pairs; ++i) {
            labels.push_back("c" + std::to_string(i));
            labels.push_back("r" + std::to_string(i));
        }
        return QubitRegister(std::move(labels));
    }

    int size() const { return static_cast<int>(labels_.size()); }
    std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    bool contains(const std::string& label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    int position(const std::string& label) const {
        const auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw LabelError("unknown qubit label '" + label + "'");
        }
        return static_cast<int>(it - labels_.begin());
    }

    // Bit position of `label` within a basis index, counted from the LSB.
    int bit(const std::string& label) const { return size() - 1 - position(label); }

    bool operator==(const QubitRegister&) const = default;

  private:
    void validate() const {
        if (labels_.empty()) {
            throw ArgumentError("QubitRegister: no labels");
        }
        if (static_cast<int>(labels_.size()) > kMaxQubits) {
            throw CapacityError("QubitRegister: more than 8 qubits");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            for (std::size_t j = i + 1; j < labels_.size(); ++j) {
                if (labels_[i] == labels_[j]) {
                    throw ArgumentError("QubitRegister: duplicate label '" + labels_[i] + "'");
                }
            }
        }
    }

    std::vector<std::string> labels_;
};

}  // namespace monolab

#endif
