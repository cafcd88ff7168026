#include "wittenlab/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wittenlab {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GridTopology topology_from_parts(const std::string& kind, int n, int ny, double spacing) {
    if (kind == "circle") return GridTopology::circle(n, spacing);
    if (kind == "interval") return GridTopology::interval(n, spacing);
    if (kind == "torus") return GridTopology::torus(n, ny, spacing);
    throw std::runtime_error("field io: unknown topology kind '" + kind + "'");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

}  // namespace

std::string field_to_csv(const SampledField& f) {
    std::ostringstream out;
    const auto& t = f.topology;
    out << "topology," << t.kind_name() << "," << t.nx;
    if (t.kind == GridTopology::Kind::Torus) out << "," << t.ny;
    out << "," << fmt17(t.spacing) << "\n";
    for (double v : f.values) out << fmt17(v) << "\n";
    return out.str();
}

SampledField field_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("field csv: empty input");
    std::vector<std::string> parts;
    {
        std::istringstream hs(header);
        std::string tok;
        while (std::getline(hs, tok, ',')) parts.push_back(tok);
    }
    if (parts.size() < 4 || parts[0] != "topology")
        throw std::runtime_error("field csv: bad header '" + header + "'");
    std::string kind = parts[1];
    int n = std::stoi(parts[2]);
    int ny = 1;
    double spacing;
    if (kind == "torus") {
        if (parts.size() != 5) throw std::runtime_error("field csv: torus header needs Ny");
        ny = std::stoi(parts[3]);
        spacing = std::stod(parts[4]);
    } else {
        if (parts.size() != 4) throw std::runtime_error("field csv: bad header arity");
        spacing = std::stod(parts[3]);
    }
    SampledField f;
    f.topology = topology_from_parts(kind, n, ny, spacing);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        f.values.push_back(std::stod(line));
    }
    if (static_cast<int>(f.values.size()) != f.topology.node_count())
        throw std::runtime_error("field csv: value count does not match topology");
    return f;
}

std::string field_to_json(const SampledField& f) {
    nlohmann::ordered_json j;
    const auto& t = f.topology;
    j["topology"]["kind"] = t.kind_name();
    j["topology"]["n"] = t.nx;
    if (t.kind == GridTopology::Kind::Torus) j["topology"]["ny"] = t.ny;
    j["topology"]["spacing"] = t.spacing;
    j["values"] = f.values;
    return j.dump(2);
}

SampledField field_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    const auto& jt = j.at("topology");
    SampledField f;
    f.topology = topology_from_parts(jt.at("kind").get<std::string>(), jt.at("n").get<int>(),
                                     jt.value("ny", 1), jt.at("spacing").get<double>());
    f.values = j.at("values").get<std::vector<double>>();
    if (static_cast<int>(f.values.size()) != f.topology.node_count())
        throw std::runtime_error("field json: value count does not match topology");
    return f;
}

void write_field_csv(const SampledField& f, const std::string& path) { spit(path, field_to_csv(f)); }
SampledField read_field_csv(const std::string& path) { return field_from_csv(slurp(path)); }
void write_field_json(const SampledField& f, const std::string& path) { spit(path, field_to_json(f)); }
SampledField read_field_json(const std::string& path) { return field_from_json(slurp(path)); }

SampledField read_field_auto(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return read_field_json(path);
    return read_field_csv(path);
}

}  // namespace wittenlab
