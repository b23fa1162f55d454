#include "qbell/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace qbell::json_io {

using nlohmann::json;

json box_to_json(const nsbox::BoxDistribution& box) {
    const int d = box.d;
    json prob = json::array();
    for (int k = 0; k < d; ++k) {
        json jk = json::array();
        for (int l = 0; l < d; ++l) {
            json jl = json::array();
            for (int i = 0; i < d; ++i)
                jl.push_back(json::array({box.pr(k, l, i, 0), box.pr(k, l, i, 1)}));
            jk.push_back(std::move(jl));
        }
        prob.push_back(std::move(jk));
    }
    return json{{"d", d}, {"prob", std::move(prob)}};
}

nsbox::BoxDistribution box_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("prob"))
        throw std::runtime_error("box JSON must have fields 'd' and 'prob'");
    const int d = j.at("d").get<int>();
    if (d < 2) throw std::runtime_error("box JSON: d must be >= 2");
    nsbox::BoxDistribution box(d);
    const json& prob = j.at("prob");
    if (static_cast<int>(prob.size()) != d)
        throw std::runtime_error("box JSON: prob must be a [k][l][i][j] array of shape d,d,d,2");
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            for (int i = 0; i < d; ++i)
                for (int jj = 0; jj < 2; ++jj)
                    box.pr(k, l, i, jj) = prob.at(k).at(l).at(i).at(jj).get<double>();
    return box;
}

json profile_to_json(const nsbox::GuessingProfile& profile) {
    json p = json::array();
    for (int e = 0; e < profile.d; ++e)
        p.push_back(json::array({profile.p(e, 0), profile.p(e, 1)}));
    return json{{"d", profile.d}, {"p", std::move(p)}};
}

nsbox::GuessingProfile profile_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("p"))
        throw std::runtime_error("profile JSON must have fields 'd' and 'p'");
    const int d = j.at("d").get<int>();
    if (d < 2) throw std::runtime_error("profile JSON: d must be >= 2");
    const json& p = j.at("p");
    if (static_cast<int>(p.size()) != d)
        throw std::runtime_error("profile JSON: p must be a [e][j] array of shape d,2");
    Eigen::MatrixXd values(d, 2);
    for (int e = 0; e < d; ++e)
        for (int jj = 0; jj < 2; ++jj) values(e, jj) = p.at(e).at(jj).get<double>();
    return nsbox::profile_from_values(values);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

} // namespace qbell::json_io
