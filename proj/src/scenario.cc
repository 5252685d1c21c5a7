#include "cbdiscrim/scenario.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "cbdiscrim/errors.h"

namespace cbd {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw ValidationError((path.empty() ? std::string("<root>") : path) + ": " + what);
}

std::string join(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string &path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

const json &require(const json &obj, const std::string &path, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path, std::string("missing field '") + key + "'");
    }
    return *it;
}

double as_real(const json &j, const std::string &path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "expected a finite number");
    }
    return v;
}

Complex as_complex(const json &j, const std::string &path) {
    if (j.is_number()) {
        return as_real(j, path);
    }
    if (!j.is_array() || j.size() != 2) {
        fail(path, "expected [re, im]");
    }
    return {as_real(j[0], index(path, 0)), as_real(j[1], index(path, 1))};
}

void reject_unknown(const json &obj, const std::string &path, std::initializer_list<const char *> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char *a : allowed) {
            ok = ok || it.key() == a;
        }
        if (!ok) {
            fail(join(path, it.key()), "unknown field");
        }
    }
}

ChannelKind kind_from_string(const std::string &s, const std::string &path) {
    if (s == "cbc1") return ChannelKind::Cbc1;
    if (s == "cbc2") return ChannelKind::Cbc2;
    if (s == "cbc3") return ChannelKind::Cbc3;
    if (s == "pauli") return ChannelKind::Pauli;
    if (s == "kraus") return ChannelKind::Kraus;
    fail(path, "unknown kind '" + s + "' (expected cbc1, cbc2, cbc3, pauli or kraus)");
}

Matrix matrix_from_json(const json &j, const std::string &path) {
    if (!j.is_array() || j.empty()) {
        fail(path, "expected a non-empty array of rows");
    }
    std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        fail(index(path, 0), "expected a non-empty row");
    }
    std::size_t cols = j[0].size();
    if (rows > kMaxDim || cols > kMaxDim) {
        fail(path, "matrix larger than " + std::to_string(kMaxDim) + "x" + std::to_string(kMaxDim));
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        std::string rp = index(path, r);
        if (!j[r].is_array() || j[r].size() != cols) {
            fail(rp, "expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; c++) {
            m(r, c) = as_complex(j[r][c], index(rp, c));
        }
    }
    return m;
}

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

}  // namespace

std::string to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::Cbc1:
            return "cbc1";
        case ChannelKind::Cbc2:
            return "cbc2";
        case ChannelKind::Cbc3:
            return "cbc3";
        case ChannelKind::Pauli:
            return "pauli";
        case ChannelKind::Kraus:
            return "kraus";
    }
    return "unknown";
}

std::optional<CbcSpec> ChannelSpec::cbc() const {
    switch (kind) {
        case ChannelKind::Cbc1:
            return CbcSpec{CbcFamily::Type1, 0, 0};
        case ChannelKind::Cbc2:
            return CbcSpec{CbcFamily::Type2, xi, 0};
        case ChannelKind::Cbc3:
            return CbcSpec{CbcFamily::Type3, xi, phi};
        default:
            return std::nullopt;
    }
}

KrausChannel ChannelSpec::channel() const {
    if (auto spec = cbc()) {
        return cbc_kraus(*spec);
    }
    if (kind == ChannelKind::Pauli) {
        return pauli_kraus(PauliSpec(q));
    }
    return KrausChannel::cptp(ops, "kraus");
}

DiscriminationProblem Scenario::problem() const {
    return DiscriminationProblem(channel_a.channel(), channel_b.channel(), p1);
}

void ConfigOverrides::apply(OptimizerConfig &cfg) const {
    if (seed) cfg.seed = *seed;
    if (grid_points) cfg.grid_points = *grid_points;
    if (tolerance) cfg.tolerance = *tolerance;
    cfg.validate();
}

ChannelSpec channel_from_json(const json &j, const std::string &path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const json &kind = require(j, path, "kind");
    if (!kind.is_string()) {
        fail(join(path, "kind"), "expected a string");
    }
    ChannelSpec c;
    c.kind = kind_from_string(kind.get<std::string>(), join(path, "kind"));
    switch (c.kind) {
        case ChannelKind::Cbc1:
            reject_unknown(j, path, {"kind"});
            break;
        case ChannelKind::Cbc2:
            reject_unknown(j, path, {"kind", "xi"});
            c.xi = as_real(require(j, path, "xi"), join(path, "xi"));
            break;
        case ChannelKind::Cbc3:
            reject_unknown(j, path, {"kind", "xi", "phi"});
            c.xi = as_real(require(j, path, "xi"), join(path, "xi"));
            c.phi = as_real(require(j, path, "phi"), join(path, "phi"));
            break;
        case ChannelKind::Pauli: {
            reject_unknown(j, path, {"kind", "q"});
            const json &q = require(j, path, "q");
            std::string qp = join(path, "q");
            if (!q.is_array() || q.size() != 4) {
                fail(qp, "expected 4 weights (I, X, Y, Z)");
            }
            for (std::size_t a = 0; a < 4; a++) {
                c.q[a] = as_real(q[a], index(qp, a));
            }
            try {
                PauliSpec check(c.q);
            } catch (const ValidationError &e) {
                fail(qp, e.what());
            }
            break;
        }
        case ChannelKind::Kraus: {
            reject_unknown(j, path, {"kind", "ops"});
            const json &ops = require(j, path, "ops");
            std::string op = join(path, "ops");
            if (!ops.is_array() || ops.empty()) {
                fail(op, "expected a non-empty array of matrices");
            }
            for (std::size_t k = 0; k < ops.size(); k++) {
                c.ops.push_back(matrix_from_json(ops[k], index(op, k)));
            }
            try {
                KrausChannel::cptp(c.ops, "kraus");
            } catch (const ValidationError &e) {
                fail(op, e.what());
            }
            if (c.ops.front().rows() != 2) {
                fail(op, "only qubit (2x2) Kraus operators are supported");
            }
            break;
        }
    }
    return c;
}

json channel_to_json(const ChannelSpec &c) {
    json j{{"kind", to_string(c.kind)}};
    switch (c.kind) {
        case ChannelKind::Cbc1:
            break;
        case ChannelKind::Cbc2:
            j["xi"] = c.xi;
            break;
        case ChannelKind::Cbc3:
            j["phi"] = c.phi;
            j["xi"] = c.xi;
            break;
        case ChannelKind::Pauli:
            j["q"] = c.q;
            break;
        case ChannelKind::Kraus: {
            json ops = json::array();
            for (const Matrix &m : c.ops) {
                json rows = json::array();
                for (std::size_t r = 0; r < m.rows(); r++) {
                    json row = json::array();
                    for (std::size_t col = 0; col < m.cols(); col++) {
                        row.push_back(complex_to_json(m(r, col)));
                    }
                    rows.push_back(row);
                }
                ops.push_back(rows);
            }
            j["ops"] = ops;
            break;
        }
    }
    return j;
}

Scenario scenario_from_json(const json &j, const std::string &path, const OptimizerConfig &defaults) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    reject_unknown(j, path, {"v", "p1", "channel_a", "channel_b", "optimizer"});
    const json &v = require(j, path, "v");
    if (!v.is_number_integer() || v.get<int>() != 1) {
        fail(join(path, "v"), "unsupported schema version (expected 1)");
    }
    Scenario s;
    s.optimizer = defaults;
    s.p1 = as_real(require(j, path, "p1"), join(path, "p1"));
    if (s.p1 < 0 || s.p1 > 1) {
        fail(join(path, "p1"), "prior must lie in [0, 1]");
    }
    s.channel_a = channel_from_json(require(j, path, "channel_a"), join(path, "channel_a"));
    s.channel_b = channel_from_json(require(j, path, "channel_b"), join(path, "channel_b"));

    if (auto it = j.find("optimizer"); it != j.end()) {
        std::string op = join(path, "optimizer");
        if (!it->is_object()) {
            fail(op, "expected an object");
        }
        reject_unknown(*it, op, {"grid_points", "refine_iters", "tolerance", "seed"});
        auto integer = [&](const char *key, auto &out) {
            if (auto f = it->find(key); f != it->end()) {
                if (!f->is_number_integer()) {
                    fail(join(op, key), "expected an integer");
                }
                if (std::is_unsigned_v<std::remove_reference_t<decltype(out)>> && !f->is_number_unsigned() &&
                    f->get<std::int64_t>() < 0) {
                    fail(join(op, key), "expected a non-negative integer");
                }
                out = f->get<std::remove_reference_t<decltype(out)>>();
            }
        };
        integer("grid_points", s.optimizer.grid_points);
        integer("refine_iters", s.optimizer.refine_iters);
        integer("seed", s.optimizer.seed);
        if (auto f = it->find("tolerance"); f != it->end()) {
            s.optimizer.tolerance = as_real(*f, join(op, "tolerance"));
        }
        try {
            s.optimizer.validate();
        } catch (const ValidationError &e) {
            fail(op, e.what());
        }
    }
    return s;
}

json scenario_to_json(const Scenario &s) {
    return json{
        {"v", 1},
        {"p1", s.p1},
        {"channel_a", channel_to_json(s.channel_a)},
        {"channel_b", channel_to_json(s.channel_b)},
        {"optimizer",
         {{"grid_points", s.optimizer.grid_points},
          {"refine_iters", s.optimizer.refine_iters},
          {"tolerance", s.optimizer.tolerance},
          {"seed", s.optimizer.seed}}},
    };
}

json parse_json_text(const std::string &text, const std::string &source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        // Translate the byte offset into a line and column.
        std::size_t line = 1;
        std::size_t col = 1;
        std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; i++) {
            if (text[i] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
        }
        throw ValidationError(
            source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON (" + e.what() + ")");
    }
}

json read_json_file(const std::string &filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) {
        throw ValidationError(filename + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), filename);
}

}  // namespace cbd
