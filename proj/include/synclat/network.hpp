#pragma once

// Regular network data model: validation, JSON parsing, quotients and a
// seeded random generator.

#include <synclat/partition.hpp>
#include <synclat/subspace.hpp>

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace synclat {

/// Malformed or invalid user input (bad JSON, irregular network, bad flags).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Regular network: a[i][j] counts the arrows cell i receives from cell j and
/// every row sums to the valency.
class Network {
public:
    Network() = default;

    explicit Network(std::vector<std::vector<std::int64_t>> rows) {
        const std::size_t n = rows.size();
        if (n == 0) throw InputError("network must have at least one cell");
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n)
                throw InputError("adjacency matrix is not square: row " + std::to_string(i + 1) + " has " +
                                 std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
            for (auto a : rows[i])
                if (a < 0) throw InputError("negative adjacency entry in row " + std::to_string(i + 1));
        }
        std::int64_t v = 0;
        for (auto a : rows[0]) v += a;
        for (std::size_t i = 1; i < n; ++i) {
            std::int64_t s = 0;
            for (auto a : rows[i]) s += a;
            if (s != v)
                throw InputError("not regular: row sums " + std::to_string(v) + " (row 1) and " + std::to_string(s) +
                                 " (row " + std::to_string(i + 1) + ") differ");
        }
        if (v < 1) throw InputError("valency must be positive");
        n_ = n;
        valency_ = v;
        adj_.reserve(n * n);
        for (auto& r : rows) adj_.insert(adj_.end(), r.begin(), r.end());
    }

    std::size_t cells() const { return n_; }
    std::int64_t valency() const { return valency_; }
    std::int64_t arrows(std::size_t target, std::size_t source) const { return adj_[target * n_ + source]; }

    std::vector<std::vector<std::int64_t>> rows() const {
        std::vector<std::vector<std::int64_t>> r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i].assign(adj_.begin() + i * n_, adj_.begin() + (i + 1) * n_);
        return r;
    }

    QMatrix adjacency() const {
        QMatrix m(RationalField{}, n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) m(i, j) = static_cast<long>(arrows(i, j));
        return m;
    }

    friend bool operator==(const Network& a, const Network& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    std::size_t n_ = 0;
    std::int64_t valency_ = 0;
    std::vector<std::int64_t> adj_;
};

/// Cells of a class receive the same number of arrows from every class.
inline bool is_balanced(const Network& net, const Partition& pi) {
    if (pi.size() != net.cells()) throw std::invalid_argument("partition size does not match network");
    const auto classes = pi.classes();
    for (const auto& target : classes) {
        for (const auto& source : classes) {
            auto count = [&](std::size_t cell) {
                std::int64_t s = 0;
                for (auto j : source) s += net.arrows(cell, j);
                return s;
            };
            const std::int64_t expected = count(target[0]);
            for (std::size_t k = 1; k < target.size(); ++k)
                if (count(target[k]) != expected) return false;
        }
    }
    return true;
}

/// Quotient network on the classes of a balanced partition.
inline Network quotient(const Network& net, const Partition& pi) {
    if (!is_balanced(net, pi)) throw InputError("partition " + pi.to_string() + " is not balanced");
    const auto classes = pi.classes();
    std::vector<std::vector<std::int64_t>> b(classes.size(), std::vector<std::int64_t>(classes.size(), 0));
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t d = 0; d < classes.size(); ++d)
            for (auto j : classes[d]) b[c][d] += net.arrows(classes[c][0], j);
    return Network(std::move(b));
}

/// Each row is an independent uniformly random composition of v into n
/// nonnegative parts (stars and bars), drawn from a seeded mt19937_64.
inline Network random_regular(std::size_t n, std::int64_t v, std::uint64_t seed) {
    if (n < 1 || v < 1) throw InputError("random network needs cells >= 1 and valency >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
    const std::size_t slots = static_cast<std::size_t>(v) + n - 1;
    for (auto& row : rows) {
        // choose n-1 bar positions among v+n-1 slots
        std::vector<std::size_t> idx(slots);
        for (std::size_t i = 0; i < slots; ++i) idx[i] = i;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, slots - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        std::vector<bool> bar(slots, false);
        for (std::size_t i = 0; i + 1 < n; ++i) bar[idx[i]] = true;
        std::size_t cell = 0;
        for (std::size_t s = 0; s < slots; ++s) {
            if (bar[s])
                ++cell;
            else
                ++row[cell];
        }
    }
    return Network(std::move(rows));
}

/// Parses {"cells": n, "matrix": [[...]]} or
/// {"cells": n, "valency": v, "edges": [[target, source, count], ...]}
/// (1-indexed cells, count defaults to 1).
inline Network parse_network(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed network document: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("network document must be a JSON object");
    try {
        if (doc.contains("matrix")) {
            auto rows = doc.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
            if (doc.contains("cells") && doc.at("cells").get<std::size_t>() != rows.size())
                throw InputError("\"cells\" does not match the number of matrix rows");
            Network net(std::move(rows));
            if (doc.contains("valency") && doc.at("valency").get<std::int64_t>() != net.valency())
                throw InputError("declared valency does not match row sums");
            return net;
        }
        if (doc.contains("edges")) {
            if (!doc.contains("cells")) throw InputError("edge-list document needs \"cells\"");
            const auto n = doc.at("cells").get<std::int64_t>();
            if (n < 1) throw InputError("\"cells\" must be positive");
            std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
            for (const auto& e : doc.at("edges")) {
                if (!e.is_array() || e.size() < 2 || e.size() > 3)
                    throw InputError("edge must be [target, source] or [target, source, count]");
                const auto t = e[0].get<std::int64_t>(), s = e[1].get<std::int64_t>();
                const std::int64_t count = e.size() == 3 ? e[2].get<std::int64_t>() : 1;
                if (t < 1 || t > n || s < 1 || s > n) throw InputError("edge cell out of range");
                if (count < 0) throw InputError("negative edge count");
                rows[t - 1][s - 1] += count;
            }
            Network net(std::move(rows));
            if (doc.contains("valency") && doc.at("valency").get<std::int64_t>() != net.valency())
                throw InputError("declared valency does not match row sums");
            return net;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed network document: ") + e.what());
    }
    throw InputError("network document needs \"matrix\" or \"edges\"");
}

inline nlohmann::json network_to_json(const Network& net) {
    return nlohmann::json{{"cells", net.cells()}, {"valency", net.valency()}, {"matrix", net.rows()}};
}

}  // namespace synclat
