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

#include <iomanip>
#include <sstream>

#include "quasar/mbqc/pattern.hpp"

namespace quasar::io {

// Line-oriented pattern text: one command per line.
//   INPUT 0 1
//   OUTPUT 2 3
//   N 2
//   E 0 2
//   M 2 XY 3.141592653589793 s:0,1 t:3
//   X 3 d:0,1
// Domain lists are comma-separated node ids; empty domains are omitted.

namespace detail {

inline std::string join_domain(const mbqc::Domain &d) {
    std::string out;
    for (int n : d) {
        if (!out.empty()) out += ',';
        out += std::to_string(n);
    }
    return out;
}

inline mbqc::Domain parse_domain(const std::string &body) {
    mbqc::Domain d;
    std::string cur;
    for (char c : body + ",") {
        if (c == ',') {
            if (!cur.empty()) d.insert(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return d;
}

} // namespace detail

inline std::string pattern_to_text(const mbqc::Pattern &p) {
    std::ostringstream out;
    out << "INPUT";
    for (int n : p.inputs()) out << ' ' << n;
    out << '\n';
    out << "OUTPUT";
    for (int n : p.outputs()) out << ' ' << n;
    out << '\n';
    out << std::setprecision(17);
    for (const auto &c : p.commands()) {
        switch (c.kind) {
            case mbqc::Command::N:
                out << "N " << c.node << '\n';
                break;
            case mbqc::Command::E:
                out << "E " << c.node << ' ' << c.node2 << '\n';
                break;
            case mbqc::Command::M: {
                out << "M " << c.node << ' ' << mbqc::plane_name(c.plane) << ' ' << c.angle;
                if (!c.s_domain.empty()) out << " s:" << detail::join_domain(c.s_domain);
                if (!c.t_domain.empty()) out << " t:" << detail::join_domain(c.t_domain);
                out << '\n';
                break;
            }
            case mbqc::Command::X:
                out << "X " << c.node;
                if (!c.s_domain.empty()) out << " d:" << detail::join_domain(c.s_domain);
                out << '\n';
                break;
            case mbqc::Command::Z:
                out << "Z " << c.node;
                if (!c.s_domain.empty()) out << " d:" << detail::join_domain(c.s_domain);
                out << '\n';
                break;
        }
    }
    return out.str();
}

inline mbqc::Pattern pattern_from_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::vector<int> inputs, outputs;
    std::vector<mbqc::Command> commands;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "INPUT") {
            int n;
            while (ls >> n) inputs.push_back(n);
        } else if (head == "OUTPUT") {
            int n;
            while (ls >> n) outputs.push_back(n);
        } else if (head == "N") {
            int n;
            ls >> n;
            commands.push_back(mbqc::Command::n(n));
        } else if (head == "E") {
            int a, b;
            ls >> a >> b;
            commands.push_back(mbqc::Command::e(a, b));
        } else if (head == "M") {
            int node;
            std::string plane;
            double angle;
            ls >> node >> plane >> angle;
            mbqc::Domain s, t;
            std::string tok;
            while (ls >> tok) {
                if (tok.rfind("s:", 0) == 0)
                    s = detail::parse_domain(tok.substr(2));
                else if (tok.rfind("t:", 0) == 0)
                    t = detail::parse_domain(tok.substr(2));
                else
                    throw invalid_input("pattern text: unknown token " + tok);
            }
            commands.push_back(mbqc::Command::m(node, angle, mbqc::plane_from(plane), s, t));
        } else if (head == "X" || head == "Z") {
            int node;
            ls >> node;
            mbqc::Domain d;
            std::string tok;
            if (ls >> tok) {
                require(tok.rfind("d:", 0) == 0, "pattern text: expected d: domain");
                d = detail::parse_domain(tok.substr(2));
            }
            commands.push_back(head == "X" ? mbqc::Command::x(node, d)
                                           : mbqc::Command::z(node, d));
        } else {
            throw invalid_input("pattern text: unknown command " + head);
        }
    }
    return mbqc::Pattern::from_commands(inputs, commands, outputs);
}

} // namespace quasar::io
