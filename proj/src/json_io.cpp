#include "shor21/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace shor21::io {

json statevector_to_json(const StateVector& state) {
    json j;
    j["dim"] = state.amp.size();
    json re = json::array(), im = json::array();
    for (const cplx& a : state.amp) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

StateVector statevector_from_json(const json& j) {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != dim || im.size() != dim) {
        throw std::invalid_argument("statevector json: re/im size mismatch");
    }
    StateVector s;
    s.amp.resize(dim);
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim) throw std::invalid_argument("statevector json: dim not a power of 2");
    s.n_qubits = n;
    for (std::size_t i = 0; i < dim; ++i) s.amp[i] = cplx(re[i].get<double>(), im[i].get<double>());
    return s;
}

json density_to_json(const DensityMatrix& rho) {
    json j;
    const Eigen::Index d = rho.m.rows();
    j["dim"] = d;
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            re.push_back(rho.m(r, c).real());
            im.push_back(rho.m(r, c).imag());
        }
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

DensityMatrix density_from_json(const json& j) {
    const Eigen::Index d = j.at("dim").get<Eigen::Index>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<Eigen::Index>(re.size()) != d * d || static_cast<Eigen::Index>(im.size()) != d * d) {
        throw std::invalid_argument("density json: re/im size mismatch");
    }
    DensityMatrix rho;
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    if ((Eigen::Index{1} << n) != d) throw std::invalid_argument("density json: dim not a power of 2");
    rho.n_qubits = n;
    rho.m.resize(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            const std::size_t k = static_cast<std::size_t>(r * d + c);
            rho.m(r, c) = cplx(re[k].get<double>(), im[k].get<double>());
        }
    }
    return rho;
}

json circuit_to_json(const Circuit& circuit) {
    json ops = json::array();
    for (const Op& op : circuit.ops) {
        json o;
        o["gate"] = gate_name(op.gate.kind);
        o["qubits"] = op.qubits;
        switch (op.gate.kind) {
            case GateKind::Ry:
            case GateKind::Rz:
            case GateKind::CPhase:
                o["params"] = json::array({op.gate.angle});
                break;
            default:
                break;
        }
        ops.push_back(std::move(o));
    }
    return ops;
}

Circuit circuit_from_json(const json& j) {
    int max_qubit = -1;
    for (const auto& o : j) {
        for (int q : o.at("qubits").get<std::vector<int>>()) max_qubit = std::max(max_qubit, q);
    }
    Circuit c(max_qubit + 1);
    for (const auto& o : j) {
        const GateKind kind = gate_kind_from_name(o.at("gate").get<std::string>());
        double angle = 0.0;
        if (o.contains("params") && !o["params"].empty()) angle = o["params"][0].get<double>();
        c.add(kind, o.at("qubits").get<std::vector<int>>(), angle);
    }
    return c;
}

json certificate_to_json(const relphase::SubstitutionCertificate& cert) {
    json j;
    j["verdict"] = cert.safe ? "safe" : "unsafe";
    j["final_deviation"] = cert.final_deviation;
    json gates = json::array();
    for (const auto& rec : cert.records) {
        json g;
        g["op_index"] = rec.op_index;
        g["qubits"] = rec.qubits;
        g["pattern_probability"] = rec.pattern_probability;
        g["max_pattern_amplitude"] = rec.max_pattern_amplitude;
        gates.push_back(std::move(g));
    }
    j["margolus_gates"] = std::move(gates);
    return j;
}

json pipeline_report_to_json(const nt::PipelineReport& report) {
    json outcomes;
    for (const auto& o : report.outcomes) {
        json e;
        e["count"] = o.count;
        if (o.order) {
            e["order"] = *o.order;
        } else {
            e["order"] = nullptr;
        }
        if (o.factors) {
            e["factors"] = json::array({o.factors->first, o.factors->second});
        } else {
            e["factors"] = nullptr;
        }
        outcomes[o.bits] = std::move(e);
    }
    json j;
    j["outcomes"] = std::move(outcomes);
    j["success_fraction"] = report.success_fraction;
    if (report.factors) {
        j["factors"] = json::array({report.factors->first, report.factors->second});
    } else {
        j["factors"] = nullptr;
    }
    return j;
}

json witness_report_to_json(const WitnessReport& report) {
    json j;
    j["alpha"] = report.alpha;
    j["overlap"] = report.overlap;
    j["witness_trace"] = report.witness_trace;
    j["margin"] = report.margin;
    json verdicts = json::array();
    for (const auto& v : report.verdicts) {
        json e;
        e["bipartition"] = v.bipartition.name(5);
        e["beta"] = v.beta;
        e["entangled"] = v.entangled;
        if (!v.note.empty()) e["note"] = v.note;
        verdicts.push_back(std::move(e));
    }
    j["bipartitions"] = std::move(verdicts);
    j["settings"] = report.settings;
    return j;
}

json tomography_report_to_json(const TomographyReport& report) {
    json j;
    j["fidelity"] = report.score.fidelity;
    j["shots"] = report.shots;
    j["exact"] = report.exact;
    j["max_abs_imag_ideal"] = report.score.max_abs_imag_ideal;
    j["rho_hat"] = density_to_json(report.rho_hat);
    j["ideal"] = density_to_json(report.ideal);
    return j;
}

noise::NoiseConfig noise_config_from_json(const json& j) {
    noise::NoiseConfig cfg;
    if (j.contains("readout")) {
        for (const auto& q : j["readout"]) {
            cfg.readout.qubits.push_back(
                noise::QubitReadout{q.at("p01").get<double>(), q.at("p10").get<double>()});
        }
        cfg.readout.validate();
    }
    if (j.contains("cx_depolarizing")) {
        cfg.cx_depolarizing = j["cx_depolarizing"].get<double>();
        if (cfg.cx_depolarizing < 0.0 || cfg.cx_depolarizing > 1.0) {
            throw std::invalid_argument("noise config: cx_depolarizing outside [0,1]");
        }
    }
    return cfg;
}

noise::NoiseConfig load_noise_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open noise config: " + path.string());
    json j;
    in >> j;
    return noise_config_from_json(j);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << contents;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace shor21::io
