// Copyright 2026 The qsec Authors
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

// Deterministic report rendering. JSON output is byte-stable: key order is
// fixed by construction order and every float prints through one %.17g
// formatter, so identical inputs and seeds give identical bytes.

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "qsec/analysis.hpp"
#include "qsec/game.hpp"

namespace qsec {

namespace jsonout {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

/// Ordered JSON document node: fields render in insertion order, never
/// sorted, so emission is reproducible byte for byte.
class Value {
  public:
    static Value object() { return Value(Kind::kObject); }
    static Value array() { return Value(Kind::kArray); }
    static Value string(std::string s) {
        Value v(Kind::kString);
        v.str_ = std::move(s);
        return v;
    }
    static Value number(double d) {
        Value v(Kind::kNumber);
        v.num_ = d;
        return v;
    }
    static Value integer(std::uint64_t i) {
        Value v(Kind::kInteger);
        v.int_ = i;
        return v;
    }
    static Value boolean(bool b) {
        Value v(Kind::kBool);
        v.bool_ = b;
        return v;
    }

    Value& add(std::string key, Value v) {
        fields_.emplace_back(std::move(key), std::move(v));
        return *this;
    }

    Value& push(Value v) {
        items_.push_back(std::move(v));
        return *this;
    }

    std::string dump() const {
        std::string out;
        write(out, 0);
        out += '\n';
        return out;
    }

  private:
    enum class Kind { kObject, kArray, kString, kNumber, kInteger, kBool };

    explicit Value(Kind kind) : kind_(kind) {}

    void write(std::string& out, int depth) const {
        const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
        const std::string inner_pad(2 * static_cast<std::size_t>(depth + 1), ' ');
        switch (kind_) {
            case Kind::kObject: {
                if (fields_.empty()) {
                    out += "{}";
                    return;
                }
                out += "{\n";
                for (std::size_t i = 0; i < fields_.size(); ++i) {
                    out += inner_pad + '"' + escape(fields_[i].first) + "\": ";
                    fields_[i].second.write(out, depth + 1);
                    if (i + 1 < fields_.size()) out += ',';
                    out += '\n';
                }
                out += pad + '}';
                return;
            }
            case Kind::kArray: {
                if (items_.empty()) {
                    out += "[]";
                    return;
                }
                out += "[\n";
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    out += inner_pad;
                    items_[i].write(out, depth + 1);
                    if (i + 1 < items_.size()) out += ',';
                    out += '\n';
                }
                out += pad + ']';
                return;
            }
            case Kind::kString:
                out += '"' + escape(str_) + '"';
                return;
            case Kind::kNumber:
                out += format_double(num_);
                return;
            case Kind::kInteger:
                out += std::to_string(int_);
                return;
            case Kind::kBool:
                out += bool_ ? "true" : "false";
                return;
        }
    }

    Kind kind_;
    std::string str_;
    double num_ = 0.0;
    std::uint64_t int_ = 0;
    bool bool_ = false;
    std::vector<std::pair<std::string, Value>> fields_;
    std::vector<Value> items_;
};

inline Value matrix_value(const ComplexMatrix& m) {
    Value rows = Value::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Value row = Value::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            Value entry = Value::array();
            entry.push(Value::number(m(r, c).real()));
            entry.push(Value::number(m(r, c).imag()));
            row.push(std::move(entry));
        }
        rows.push(std::move(row));
    }
    return rows;
}

}  // namespace jsonout

//=========================================================================
// Advantage (analyze) reports
//=========================================================================

inline std::string render_advantage_report_json(const AdvantageReport& report) {
    using jsonout::Value;
    Value root = Value::object();
    root.add("command", Value::string("analyze"));
    root.add("scheme", Value::string(report.scheme_name));
    root.add("key_model", Value::string(to_string(report.key_model)));
    Value tiers = Value::object();
    tiers.add("information_theoretic", Value::string("evaluated"));
    tiers.add("computational", Value::string("not evaluated"));
    tiers.add("physical", Value::string("not evaluated"));
    root.add("tiers", std::move(tiers));
    root.add("threshold", Value::number(report.threshold));
    Value pairs = Value::array();
    for (const PairResult& pr : report.pairs) {
        Value pv = Value::object();
        pv.add("x", Value::string(pr.x_name));
        pv.add("y", Value::string(pr.y_name));
        pv.add("trace_distance", Value::number(pr.trace_distance));
        pv.add("helstrom_success", Value::number(pr.helstrom_success));
        if (pr.key_averaged_distance) {
            pv.add("key_averaged_distance", Value::number(*pr.key_averaged_distance));
        }
        pairs.push(std::move(pv));
    }
    root.add("pairs", std::move(pairs));
    root.add("max_distance", Value::number(report.max_distance));
    root.add("verdict", Value::string(to_string(report.verdict)));
    if (report.witness) {
        Value w = Value::object();
        w.add("x", Value::string(report.witness->x_name));
        w.add("y", Value::string(report.witness->y_name));
        w.add("success", Value::number(report.witness->success));
        Value povm = Value::object();
        Value labels = Value::array();
        for (const std::string& l : report.witness->povm.labels()) {
            labels.push(Value::string(l));
        }
        povm.add("labels", std::move(labels));
        Value effects = Value::array();
        for (const ComplexMatrix& e : report.witness->povm.effects()) {
            effects.push(jsonout::matrix_value(e));
        }
        povm.add("effects", std::move(effects));
        w.add("povm", std::move(povm));
        root.add("witness", std::move(w));
    }
    return root.dump();
}

namespace detail {

inline std::string matrix_text(const ComplexMatrix& m, const std::string& pad) {
    std::string out;
    for (std::size_t r = 0; r < m.dim(); ++r) {
        out += pad + "[";
        for (std::size_t c = 0; c < m.dim(); ++c) {
            out += jsonout::format_double(m(r, c).real()) + (m(r, c).imag() < 0.0 ? "" : "+") +
                   jsonout::format_double(m(r, c).imag()) + "i";
            if (c + 1 < m.dim()) out += ", ";
        }
        out += "]\n";
    }
    return out;
}

}  // namespace detail

inline std::string render_advantage_report_text(const AdvantageReport& report) {
    using jsonout::format_double;
    std::string out;
    out += "scheme: " + report.scheme_name + " (" + to_string(report.key_model) + " key model)\n";
    out += "tier: information-theoretic evaluated; computational, physical: not evaluated\n";
    out += "threshold: " + format_double(report.threshold) + "\n";
    out += "pairs:\n";
    for (const PairResult& pr : report.pairs) {
        out += "  " + pr.x_name + " vs " + pr.y_name +
               ": trace_distance=" + format_double(pr.trace_distance) +
               " helstrom_success=" + format_double(pr.helstrom_success);
        if (pr.key_averaged_distance) {
            out += " key_averaged_distance=" + format_double(*pr.key_averaged_distance);
        }
        out += "\n";
    }
    out += "max_distance: " + format_double(report.max_distance) + "\n";
    out += "verdict: " + to_string(report.verdict) + "\n";
    if (report.witness) {
        out += "attack witness (" + report.witness->x_name + " vs " + report.witness->y_name +
               "): helstrom measurement succeeds with probability " +
               format_double(report.witness->success) + "\n";
        for (std::size_t i = 0; i < report.witness->povm.size(); ++i) {
            out += "  effect \"" + report.witness->povm.label(i) + "\":\n";
            out += detail::matrix_text(report.witness->povm.effect(i), "    ");
        }
    }
    return out;
}

//=========================================================================
// Game reports
//=========================================================================

struct GameReport {
    std::string command;  // "game" or "semantic"
    std::string scheme_name;
    std::string x_name;
    std::string y_name;
    std::string adversary;  // semantic games only; empty otherwise
    GameResult result;
    double analytic_success = 0.0;
    double analytic_advantage = 0.0;
    bool within_band = false;  // |empirical - analytic| <= 5 * std_error
};

inline GameReport make_game_report(std::string command, std::string scheme_name,
                                   std::string x_name, std::string y_name, std::string adversary,
                                   GameResult result, double analytic_success,
                                   double analytic_advantage) {
    GameReport r;
    r.command = std::move(command);
    r.scheme_name = std::move(scheme_name);
    r.x_name = std::move(x_name);
    r.y_name = std::move(y_name);
    r.adversary = std::move(adversary);
    r.result = result;
    r.analytic_success = analytic_success;
    r.analytic_advantage = analytic_advantage;
    r.within_band =
        std::abs(result.empirical_success - analytic_success) <= 5.0 * result.std_error;
    return r;
}

inline std::string render_game_report_json(const GameReport& report) {
    using jsonout::Value;
    Value root = Value::object();
    root.add("command", Value::string(report.command));
    root.add("scheme", Value::string(report.scheme_name));
    root.add("x", Value::string(report.x_name));
    root.add("y", Value::string(report.y_name));
    if (!report.adversary.empty()) root.add("adversary", Value::string(report.adversary));
    root.add("trials", Value::integer(report.result.trials));
    root.add("seed", Value::integer(report.result.seed));
    root.add("wins", Value::integer(report.result.wins));
    root.add("empirical_success", Value::number(report.result.empirical_success));
    root.add("empirical_advantage", Value::number(report.result.empirical_advantage));
    root.add("std_error", Value::number(report.result.std_error));
    root.add("analytic_success", Value::number(report.analytic_success));
    root.add("analytic_advantage", Value::number(report.analytic_advantage));
    root.add("band_check", Value::string(report.within_band ? "PASS" : "FAIL"));
    return root.dump();
}

inline std::string render_game_report_text(const GameReport& report) {
    using jsonout::format_double;
    std::string out;
    out += "command: " + report.command + "\n";
    out += "scheme: " + report.scheme_name + "\n";
    out += "pair: " + report.x_name + " vs " + report.y_name + "\n";
    if (!report.adversary.empty()) out += "adversary: " + report.adversary + "\n";
    out += "trials: " + std::to_string(report.result.trials) +
           "  seed: " + std::to_string(report.result.seed) + "\n";
    out += "wins: " + std::to_string(report.result.wins) + "\n";
    out += "empirical: success=" + format_double(report.result.empirical_success) +
           " advantage=" + format_double(report.result.empirical_advantage) +
           " std_error=" + format_double(report.result.std_error) + "\n";
    out += "analytic:  success=" + format_double(report.analytic_success) +
           " advantage=" + format_double(report.analytic_advantage) + "\n";
    out += "band check (|empirical - analytic| <= 5*std_error): " +
           std::string(report.within_band ? "PASS" : "FAIL") + "\n";
    return out;
}

}  // namespace qsec
