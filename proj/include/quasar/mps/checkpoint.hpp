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

#include "quasar/mps/mps.hpp"

namespace quasar::mps {

// Checkpoint layout (little-endian):
//   magic "QMPS", u32 version, i32 nsite, i32 phys, i32 chi_max,
//   f64 truncation_error, then per site (i32 left, phys, right, f64 re/im
//   pairs), then per bond (i32 count, f64 singular values).

inline constexpr std::uint32_t kCheckpointVersion = 1;

inline void save_checkpoint(MPSState &state, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "checkpoint: cannot open " + path + " for writing");
    auto w32 = [&](std::int32_t v) { out.write(reinterpret_cast<const char *>(&v), 4); };
    auto w64 = [&](double v) { out.write(reinterpret_cast<const char *>(&v), 8); };
    out.write("QMPS", 4);
    const std::uint32_t ver = kCheckpointVersion;
    out.write(reinterpret_cast<const char *>(&ver), 4);
    w32(state.nsite());
    w32(state.phys_dim());
    w32(state.chi_max());
    w64(state.truncation_error());
    for (int k = 0; k < state.nsite(); ++k) {
        const SiteTensor &t = state.site(k);
        w32(t.left);
        w32(t.phys);
        w32(t.right);
        for (const cdouble &v : t.data) {
            w64(v.real());
            w64(v.imag());
        }
    }
    for (int b = 0; b + 1 < state.nsite(); ++b) {
        rvec sv = state.bond_spectrum(b);
        w32(static_cast<std::int32_t>(sv.size()));
        for (int i = 0; i < sv.size(); ++i) w64(sv(i));
    }
}

struct Checkpoint {
    MPSState state;
    std::vector<rvec> bond_spectra;
};

inline Checkpoint load_checkpoint(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "checkpoint: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    require(std::string(magic, 4) == "QMPS", "checkpoint: bad magic");
    std::uint32_t ver = 0;
    in.read(reinterpret_cast<char *>(&ver), 4);
    require(ver == kCheckpointVersion, "checkpoint: unsupported version");
    auto r32 = [&] {
        std::int32_t v = 0;
        in.read(reinterpret_cast<char *>(&v), 4);
        return v;
    };
    auto r64 = [&] {
        double v = 0;
        in.read(reinterpret_cast<char *>(&v), 8);
        return v;
    };
    const int nsite = r32(), phys = r32(), chi = r32();
    const double terr = r64();
    require(nsite >= 1 && phys >= 2 && chi >= 1, "checkpoint: corrupt header");

    Checkpoint out;
    out.state = MPSState::product(std::vector<int>(nsite, 0), phys, chi);
    for (int k = 0; k < nsite; ++k) {
        SiteTensor t;
        t.left = r32();
        t.phys = r32();
        t.right = r32();
        require(t.left >= 1 && t.phys == phys && t.right >= 1, "checkpoint: corrupt tensor");
        t.data.resize(static_cast<std::size_t>(t.left) * t.phys * t.right);
        for (auto &v : t.data) {
            const double re = r64(), im = r64();
            v = cdouble(re, im);
        }
        out.state.overwrite_site(k, std::move(t));
    }
    out.state.set_truncation_error(terr);
    out.state.recanonicalize();
    for (int b = 0; b + 1 < nsite; ++b) {
        const int count = r32();
        rvec sv(count);
        for (int i = 0; i < count; ++i) sv(i) = r64();
        out.bond_spectra.push_back(std::move(sv));
    }
    require(in.good(), "checkpoint: truncated file");
    return out;
}

} // namespace quasar::mps
