#include "gsp4lfun/json_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gsp4lfun {

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failure: " + path);
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

std::string double_string(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool integer_string(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

double json_to_double(const Json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (integer_string(s)) return mpz_class(s).get_d();
        return std::stod(s);
    }
    throw std::runtime_error("expected number for " + what);
}

mpz_class json_to_mpz(const Json& v, const std::string& what) {
    if (v.is_number_integer()) return mpz_class(static_cast<long>(v.get<long long>()));
    if (v.is_string() && integer_string(v.get<std::string>()))
        return mpz_class(v.get<std::string>());
    throw std::runtime_error("expected exact integer for " + what);
}

// integers that fit in int64 are written as JSON numbers, the rest as strings
Json mpz_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return Json(static_cast<long long>(v.get_si()));
    return Json(v.get_str());
}

Json double_to_json(double v) {
    if (std::nearbyint(v) == v && std::abs(v) < 9.0e15) return Json(static_cast<long long>(v));
    return Json(double_string(v));
}

}

Json eigenform_to_json(const EllipticEigenform& f) {
    Json j;
    j["type"] = "gl2";
    j["weight"] = f.weight();
    Json coeffs = Json::object();
    for (long n = 1; n <= f.precision(); ++n) coeffs[std::to_string(n)] = f.coeff(n).get_str();
    j["coeffs"] = std::move(coeffs);
    return j;
}

void write_eigenform(const EllipticEigenform& f, const std::string& path) {
    write_text(path, eigenform_to_json(f).dump());
}

EllipticEigenform read_eigenform(const std::string& path) {
    Json j = load_json(path);
    if (j.value("type", "") != "gl2") throw std::runtime_error(path + ": not a gl2 form file");
    int weight = j.at("weight").get<int>();
    const Json& coeffs = j.at("coeffs");
    long n_max = 0;
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it)
        n_max = std::max(n_max, std::stol(it.key()));
    QExpansion q;
    q.weight = weight;
    q.a.assign(static_cast<std::size_t>(n_max) + 1, mpz_class(0));
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it)
        q.a[static_cast<std::size_t>(std::stol(it.key()))] = json_to_mpz(it.value(), "coefficient");
    return EllipticEigenform(weight, std::move(q));
}

Json paramodular_to_json(const ParamodularEigenform& f) {
    Json j;
    j["type"] = "gsp4";
    j["k"] = f.k();
    j["j"] = f.j();
    j["level"] = f.level();
    j["packet"] = f.packet() == Packet::P ? "P" : "G";
    if (f.asserted_good()) j["good"] = true;
    Json hecke = Json::object();
    for (const auto& [p, pair] : f.hecke()) {
        auto exact = f.hecke_exact().find(p);
        Json entry = Json::array();
        if (exact != f.hecke_exact().end()) {
            entry.push_back(mpz_to_json(exact->second.first));
            entry.push_back(mpz_to_json(exact->second.second));
        } else {
            entry.push_back(double_to_json(pair.lp));
            entry.push_back(double_to_json(pair.lp2));
        }
        hecke[std::to_string(p)] = std::move(entry);
    }
    j["hecke"] = std::move(hecke);
    if (!f.sk_source_path().empty()) j["sk_source"] = f.sk_source_path();
    return j;
}

void write_paramodular(const ParamodularEigenform& f, const std::string& path) {
    write_text(path, paramodular_to_json(f).dump());
}

ParamodularEigenform read_paramodular(const std::string& path) {
    Json j = load_json(path);
    if (j.value("type", "") != "gsp4") throw std::runtime_error(path + ": not a gsp4 form file");
    ParamodularEigenform::Data d;
    d.k = j.at("k").get<int>();
    d.j = j.at("j").get<int>();
    d.level = j.at("level").get<long>();
    std::string packet = j.at("packet").get<std::string>();
    if (packet != "P" && packet != "G") throw std::runtime_error(path + ": unknown packet type");
    d.packet = packet == "P" ? Packet::P : Packet::G;
    d.asserted_good = j.value("good", false);
    for (auto it = j.at("hecke").begin(); it != j.at("hecke").end(); ++it) {
        long p = std::stol(it.key());
        const Json& entry = it.value();
        if (!entry.is_array() || entry.size() != 2)
            throw std::runtime_error(path + ": hecke entries must be [lp, lp2]");
        HeckePair pair{json_to_double(entry[0], "lambda(p)"), json_to_double(entry[1], "lambda(p^2)")};
        d.hecke[p] = pair;
        bool exact0 = entry[0].is_number_integer() ||
                      (entry[0].is_string() && integer_string(entry[0].get<std::string>()));
        bool exact1 = entry[1].is_number_integer() ||
                      (entry[1].is_string() && integer_string(entry[1].get<std::string>()));
        if (exact0 && exact1)
            d.hecke_exact[p] = {json_to_mpz(entry[0], "lambda(p)"),
                                json_to_mpz(entry[1], "lambda(p^2)")};
    }
    if (j.contains("sk_source")) {
        d.sk_source_path = j.at("sk_source").get<std::string>();
        std::filesystem::path base = std::filesystem::path(path).parent_path();
        std::filesystem::path src = base / d.sk_source_path;
        d.sk_source = read_eigenform(src.string());
    }
    return ParamodularEigenform(std::move(d));
}

Json character_to_json(const DirichletCharacter& chi) {
    Json j;
    j["modulus"] = chi.modulus();
    j["index"] = chi.index();
    j["conductor"] = chi.conductor();
    j["parity"] = chi.is_odd() ? "odd" : "even";
    j["order"] = chi.order();
    return j;
}

DirichletCharacter parse_character_address(const std::string& address) {
    auto pos = address.find(':');
    if (pos == std::string::npos)
        throw std::runtime_error("character address must be \"q:index\", got " + address);
    long q = std::stol(address.substr(0, pos));
    long index = std::stol(address.substr(pos + 1));
    return DirichletCharacter(q, index);
}

}
