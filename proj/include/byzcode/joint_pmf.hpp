#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "byzcode/sensor_set.hpp"

namespace byzcode {

// Thrown by condition() when the conditioning context has probability zero.
class zero_probability_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Dense joint probability mass function over m finite alphabets.
// Cells are stored row-major over (x_1, ..., x_m): the last coordinate varies
// fastest. Immutable after construction; safe to share across threads.
class JointPmf {
  public:
    static JointPmf from_probs(std::vector<int> alphabet_sizes, std::vector<double> probs);
    static JointPmf uniform(std::vector<int> alphabet_sizes);
    // Tensor product: result alphabets are a's followed by b's.
    static JointPmf product(const JointPmf& a, const JointPmf& b);

    int dimensions() const { return static_cast<int>(sizes_.size()); }
    int alphabet_size(int sensor) const { return sizes_[sensor]; }
    const std::vector<int>& alphabet_sizes() const { return sizes_; }
    std::size_t cell_count() const { return probs_.size(); }
    double prob(std::size_t cell) const { return probs_[cell]; }
    std::span<const double> probs() const { return probs_; }

    std::size_t index_of(std::span<const int> symbols) const;
    void decode_index(std::size_t cell, std::span<int> symbols) const;
    // Stride of each coordinate in the flat cell index.
    const std::vector<std::size_t>& strides() const { return strides_; }

    double max_abs_diff(const JointPmf& other) const;

    static JointPmf from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static JointPmf load(const std::string& path);
    void save(const std::string& path) const;

    // Probabilities below this are treated as exact zeros in entropy terms.
    static constexpr double kZeroTol = 1e-15;

  private:
    JointPmf(std::vector<int> sizes, std::vector<double> probs, std::vector<std::size_t> strides)
        : sizes_(std::move(sizes)), probs_(std::move(probs)), strides_(std::move(strides)) {}

    std::vector<int> sizes_;
    std::vector<double> probs_;
    std::vector<std::size_t> strides_;
};

// m x k matrix of source symbols for one round, sensor-major.
struct SequenceBlock {
    int sensors = 0;
    int length = 0;
    std::vector<std::uint8_t> data;  // data[sensor * length + t]

    SequenceBlock() = default;
    SequenceBlock(int sensors_, int length_)
        : sensors(sensors_), length(length_),
          data(static_cast<std::size_t>(sensors_) * length_, 0) {}

    std::uint8_t symbol(int sensor, int t) const {
        return data[static_cast<std::size_t>(sensor) * length + t];
    }
    void set_symbol(int sensor, int t, std::uint8_t v) {
        data[static_cast<std::size_t>(sensor) * length + t] = v;
    }
    std::span<const std::uint8_t> row(int sensor) const {
        return {data.data() + static_cast<std::size_t>(sensor) * length,
                static_cast<std::size_t>(length)};
    }
    std::span<std::uint8_t> row(int sensor) {
        return {data.data() + static_cast<std::size_t>(sensor) * length,
                static_cast<std::size_t>(length)};
    }
    // Rows for the sensors in s, in increasing sensor order.
    SequenceBlock select(SensorSet s) const;

    bool operator==(const SequenceBlock&) const = default;
};

}  // namespace byzcode
