#include "byzcode/joint_pmf.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "byzcode/kernels.hpp"

namespace byzcode {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 24;

std::vector<std::size_t> make_strides(const std::vector<int>& sizes) {
    std::vector<std::size_t> strides(sizes.size(), 1);
    for (int i = static_cast<int>(sizes.size()) - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * static_cast<std::size_t>(sizes[i + 1]);
    return strides;
}

}  // namespace

JointPmf JointPmf::from_probs(std::vector<int> alphabet_sizes, std::vector<double> probs) {
    if (alphabet_sizes.empty()) throw std::invalid_argument("JointPmf: need at least one sensor");
    if (alphabet_sizes.size() > 16) throw std::invalid_argument("JointPmf: too many sensors");
    std::size_t cells = 1;
    for (int s : alphabet_sizes) {
        if (s < 1) throw std::invalid_argument("JointPmf: alphabet sizes must be >= 1");
        cells *= static_cast<std::size_t>(s);
        if (cells > kMaxCells) throw std::invalid_argument("JointPmf: joint alphabet too large");
    }
    if (probs.size() != cells)
        throw std::invalid_argument("JointPmf: expected " + std::to_string(cells) +
                                    " probabilities, got " + std::to_string(probs.size()));
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("JointPmf: probabilities must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("JointPmf: probabilities sum to " + std::to_string(total) +
                                    ", expected 1 within 1e-12");
    auto strides = make_strides(alphabet_sizes);
    return JointPmf(std::move(alphabet_sizes), std::move(probs), std::move(strides));
}

JointPmf JointPmf::uniform(std::vector<int> alphabet_sizes) {
    std::size_t cells = 1;
    for (int s : alphabet_sizes) cells *= static_cast<std::size_t>(s);
    std::vector<double> probs(cells, 1.0 / static_cast<double>(cells));
    return from_probs(std::move(alphabet_sizes), std::move(probs));
}

JointPmf JointPmf::product(const JointPmf& a, const JointPmf& b) {
    std::vector<int> sizes = a.sizes_;
    sizes.insert(sizes.end(), b.sizes_.begin(), b.sizes_.end());
    std::vector<double> probs;
    probs.reserve(a.cell_count() * b.cell_count());
    for (double pa : a.probs_)
        for (double pb : b.probs_) probs.push_back(pa * pb);
    return from_probs(std::move(sizes), std::move(probs));
}

std::size_t JointPmf::index_of(std::span<const int> symbols) const {
    std::size_t cell = 0;
    for (int i = 0; i < dimensions(); ++i) {
        if (symbols[i] < 0 || symbols[i] >= sizes_[i])
            throw std::invalid_argument("JointPmf: symbol out of range");
        cell += strides_[i] * static_cast<std::size_t>(symbols[i]);
    }
    return cell;
}

void JointPmf::decode_index(std::size_t cell, std::span<int> symbols) const {
    for (int i = 0; i < dimensions(); ++i) {
        symbols[i] = static_cast<int>(cell / strides_[i]);
        cell %= strides_[i];
    }
}

double JointPmf::max_abs_diff(const JointPmf& other) const {
    if (sizes_ != other.sizes_) throw std::invalid_argument("max_abs_diff: shape mismatch");
    return kernels::max_abs_diff(probs_, other.probs_);
}

JointPmf JointPmf::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("alphabet_sizes") || !j.contains("probs"))
        throw std::invalid_argument("pmf json: need {\"alphabet_sizes\": [...], \"probs\": [...]}");
    auto sizes = j.at("alphabet_sizes").get<std::vector<int>>();
    auto probs = j.at("probs").get<std::vector<double>>();
    return from_probs(std::move(sizes), std::move(probs));
}

nlohmann::json JointPmf::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["alphabet_sizes"] = sizes_;
    j["probs"] = probs_;
    return j;
}

JointPmf JointPmf::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pmf file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

void JointPmf::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pmf file: " + path);
    out << to_json().dump(2) << "\n";
}

SequenceBlock SequenceBlock::select(SensorSet s) const {
    SequenceBlock out(s.count(), length);
    int row_out = 0;
    for (int i = 0; i < sensors; ++i) {
        if (!s.contains(i)) continue;
        std::copy(row(i).begin(), row(i).end(), out.row(row_out).begin());
        ++row_out;
    }
    return out;
}

}  // namespace byzcode
