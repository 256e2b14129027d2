// Copyright 2026 The Quasar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>

#include <json.hpp>

#include "quasar/core.hpp"

namespace quasar::io {

/// Job output container. Serialization is byte-deterministic for a fixed
/// seed in single-threaded mode: keys are sorted, doubles print in
/// shortest-round-trip form, and wall-clock timings are opt-in (they would
/// break reproducibility, so they default to null).
class ResultFile {
  public:
    ResultFile(const std::string &kind, std::uint64_t seed) {
        root_["version"] = 1;
        root_["job"]["kind"] = kind;
        root_["job"]["seed"] = seed;
        root_["job"]["timings_ms"] = nullptr;
    }

    nlohmann::json &root() { return root_; }

    void set_timing(const std::string &label, double ms) { root_["job"]["timings_ms"][label] = ms; }

    void add_counts(const std::map<std::string, std::uint64_t> &counts) {
        auto &samples = root_["samples"];
        for (const auto &[key, count] : counts) samples[key] = count;
    }

    void add_probabilities(const std::map<std::string, double> &probs) {
        auto &p = root_["probabilities"];
        for (const auto &[key, value] : probs) p[key] = value;
    }

    void add_expectations(const std::vector<double> &values) { root_["expectations"] = values; }

    void add_gradients(const std::vector<double> &params, const std::vector<double> &data) {
        root_["gradients"]["params"] = params;
        root_["gradients"]["data"] = data;
    }

    void add_state(const cvec &amps) {
        std::vector<double> re(amps.size()), im(amps.size());
        for (long i = 0; i < amps.size(); ++i) {
            re[i] = amps(i).real();
            im[i] = amps(i).imag();
        }
        root_["state"]["re"] = re;
        root_["state"]["im"] = im;
    }

    void add_homodyne_samples(const rmat &samples) {
        std::vector<std::vector<double>> rows(samples.rows());
        for (int i = 0; i < samples.rows(); ++i) {
            rows[i].resize(samples.cols());
            for (int j = 0; j < samples.cols(); ++j) rows[i][j] = samples(i, j);
        }
        root_["homodyne_samples"] = rows;
    }

    void add_diagnostic(const std::string &key, double value) { root_["diagnostics"][key] = value; }
    void add_diagnostic(const std::string &key, const std::string &value) {
        root_["diagnostics"][key] = value;
    }

    std::string serialize() const { return root_.dump(2) + "\n"; }

    void write(const std::string &path) const {
        std::ofstream out(path);
        require(out.good(), "result file: cannot open " + path + " for writing");
        out << serialize();
    }

  private:
    nlohmann::json root_;
};

/// Re-parse helper (round-trip checks).
inline nlohmann::json load_result_file(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), "result file: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

} // namespace quasar::io
